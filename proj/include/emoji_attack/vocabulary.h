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

#ifndef EMOJI_ATTACK_VOCABULARY_H_
#define EMOJI_ATTACK_VOCABULARY_H_

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "emoji_attack/lexicon.h"

namespace emoji_attack {

enum class Modality { kText, kEmoji };

// Unified text + emoji vocabulary. Text ids occupy [0, text_size()), emoji
// ids [text_size(), size()), so the two modalities never share an id even when
// a text token spells an emoticon.
class Vocabulary {
 public:
  // Duplicate text tokens keep their first id. Throws std::invalid_argument
  // on an empty lexicon.
  static Vocabulary Build(std::span<const std::string> text_tokens,
                          const EmojiLexicon& lexicon);

  std::size_t size() const { return text_.size() + emoji_.size(); }
  std::size_t text_size() const { return text_.size(); }
  std::size_t emoji_size() const { return emoji_.size(); }

  Modality modality(int id) const;
  const std::string& surface(int id) const;

  std::optional<int> Lookup(std::string_view surface, Modality modality) const;
  int EmojiId(TokenId token) const;
  TokenId LexiconToken(int id) const;

 private:
  std::vector<std::string> text_;
  std::vector<std::string> emoji_;
  std::unordered_map<std::string, int> text_ids_;
  std::unordered_map<std::string, int> emoji_ids_;
};

// Attention mask between positions: 0 within a modality, mask_beta across.
// Throws std::invalid_argument on an empty list.
Eigen::MatrixXd ModalityMask(std::span<const Modality> modalities,
                             double mask_beta);

}  // namespace emoji_attack

#endif  // EMOJI_ATTACK_VOCABULARY_H_
