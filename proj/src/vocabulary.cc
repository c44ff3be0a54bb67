//
// Copyright 2026 The Emoji Attack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "emoji_attack/vocabulary.h"

#include <stdexcept>

namespace emoji_attack {

Vocabulary Vocabulary::Build(std::span<const std::string> text_tokens,
                             const EmojiLexicon& lexicon) {
  if (lexicon.empty()) {
    throw std::invalid_argument("vocabulary needs a non-empty lexicon");
  }
  Vocabulary vocab;
  for (const std::string& token : text_tokens) {
    if (vocab.text_ids_.emplace(token, static_cast<int>(vocab.text_.size()))
            .second) {
      vocab.text_.push_back(token);
    }
  }
  for (const EmojiToken& token : lexicon.tokens()) {
    vocab.emoji_ids_.emplace(token.surface,
                             static_cast<int>(vocab.emoji_.size()));
    vocab.emoji_.push_back(token.surface);
  }
  return vocab;
}

Modality Vocabulary::modality(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= size()) {
    throw std::out_of_range("vocabulary id " + std::to_string(id));
  }
  return static_cast<std::size_t>(id) < text_.size() ? Modality::kText
                                                     : Modality::kEmoji;
}

const std::string& Vocabulary::surface(int id) const {
  return modality(id) == Modality::kText
             ? text_[static_cast<std::size_t>(id)]
             : emoji_[static_cast<std::size_t>(id) - text_.size()];
}

std::optional<int> Vocabulary::Lookup(std::string_view surface,
                                      Modality modality) const {
  const auto& ids = modality == Modality::kText ? text_ids_ : emoji_ids_;
  const auto it = ids.find(std::string(surface));
  if (it == ids.end()) return std::nullopt;
  return modality == Modality::kText
             ? it->second
             : it->second + static_cast<int>(text_.size());
}

int Vocabulary::EmojiId(TokenId token) const {
  if (token < 0 || static_cast<std::size_t>(token) >= emoji_.size()) {
    throw std::out_of_range("emoji token " + std::to_string(token));
  }
  return static_cast<int>(text_.size()) + token;
}

TokenId Vocabulary::LexiconToken(int id) const {
  if (modality(id) != Modality::kEmoji) {
    throw std::invalid_argument("vocabulary id " + std::to_string(id) +
                                " is a text token");
  }
  return static_cast<TokenId>(static_cast<std::size_t>(id) - text_.size());
}

Eigen::MatrixXd ModalityMask(std::span<const Modality> modalities,
                             double mask_beta) {
  if (modalities.empty()) {
    throw std::invalid_argument("modality mask needs at least one position");
  }
  const auto n = static_cast<Eigen::Index>(modalities.size());
  Eigen::MatrixXd mask(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      mask(i, j) = modalities[static_cast<std::size_t>(i)] ==
                           modalities[static_cast<std::size_t>(j)]
                       ? 0.0
                       : mask_beta;
    }
  }
  return mask;
}

}  // namespace emoji_attack
