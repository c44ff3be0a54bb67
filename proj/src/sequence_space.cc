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

#include "emoji_attack/sequence_space.h"

#include <stdexcept>

namespace emoji_attack {

void SequenceSpaceConfig::Validate() const {
  if (l_min < 0) throw std::invalid_argument("l_min must be >= 0");
  if (l_max < l_min) throw std::invalid_argument("l_max must be >= l_min");
  if (l_max > kMaxSequenceLength) {
    throw std::invalid_argument("l_max must be <= " +
                                std::to_string(kMaxSequenceLength));
  }
}

bool ValidateSequence(const EmojiSequence& seq, const SequenceSpaceConfig& cfg,
                      const EmojiLexicon& lexicon) {
  const auto length = static_cast<long>(seq.size());
  if (length < cfg.l_min || length > cfg.l_max) return false;
  for (TokenId id : seq.tokens) {
    if (!lexicon.contains(id)) return false;
  }
  return true;
}

boost::multiprecision::cpp_int SequenceSpaceSize(std::size_t alphabet_size,
                                                 int length) {
  if (length < 0) throw std::invalid_argument("length must be >= 0");
  return boost::multiprecision::pow(
      boost::multiprecision::cpp_int(alphabet_size),
      static_cast<unsigned>(length));
}

boost::multiprecision::cpp_int SequenceSpaceSize(const EmojiLexicon& lexicon,
                                                 int length) {
  return SequenceSpaceSize(lexicon.size(), length);
}

std::string JoinSurfaces(const EmojiSequence& seq,
                         const EmojiLexicon& lexicon) {
  std::string out;
  for (TokenId id : seq.tokens) out += lexicon.token(id).surface;
  return out;
}

std::vector<EmojiSequence> EnumerateSequences(
    const std::vector<TokenId>& alphabet, const SequenceSpaceConfig& cfg) {
  cfg.Validate();
  std::vector<EmojiSequence> out;
  for (int length = cfg.l_min; length <= cfg.l_max; ++length) {
    if (length > 0 && alphabet.empty()) break;
    std::vector<std::size_t> digits(static_cast<std::size_t>(length), 0);
    while (true) {
      EmojiSequence seq;
      seq.tokens.reserve(digits.size());
      for (std::size_t d : digits) seq.tokens.push_back(alphabet[d]);
      out.push_back(std::move(seq));
      int pos = length - 1;
      while (pos >= 0 && ++digits[static_cast<std::size_t>(pos)] == alphabet.size()) {
        digits[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
  }
  return out;
}

}  // namespace emoji_attack
