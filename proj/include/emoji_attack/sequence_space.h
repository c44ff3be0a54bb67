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

#ifndef EMOJI_ATTACK_SEQUENCE_SPACE_H_
#define EMOJI_ATTACK_SEQUENCE_SPACE_H_

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <string>
#include <vector>

#include "emoji_attack/lexicon.h"

namespace emoji_attack {

inline constexpr int kMaxSequenceLength = 32;

// Length bounds applied independently to the prefix and the suffix.
struct SequenceSpaceConfig {
  int l_min = 1;
  int l_max = 3;

  // Throws std::invalid_argument unless 0 <= l_min <= l_max <= 32.
  void Validate() const;
  int num_lengths() const { return l_max - l_min + 1; }

  friend bool operator==(const SequenceSpaceConfig&,
                         const SequenceSpaceConfig&) = default;
};

struct EmojiSequence {
  std::vector<TokenId> tokens;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }

  friend bool operator==(const EmojiSequence&, const EmojiSequence&) = default;
  friend auto operator<=>(const EmojiSequence&, const EmojiSequence&) = default;
};

// True iff the length is within bounds and every id belongs to `lexicon`.
// Never throws.
bool ValidateSequence(const EmojiSequence& seq, const SequenceSpaceConfig& cfg,
                      const EmojiLexicon& lexicon);

// |lexicon|^length with arbitrary precision.
boost::multiprecision::cpp_int SequenceSpaceSize(const EmojiLexicon& lexicon,
                                                 int length);
boost::multiprecision::cpp_int SequenceSpaceSize(std::size_t alphabet_size,
                                                 int length);

// Concatenated token surfaces with no separator.
std::string JoinSurfaces(const EmojiSequence& seq, const EmojiLexicon& lexicon);

// Every sequence over `alphabet` with a length in [cfg.l_min, cfg.l_max], by
// length then lexicographic id order. Intended for small alphabets.
std::vector<EmojiSequence> EnumerateSequences(
    const std::vector<TokenId>& alphabet, const SequenceSpaceConfig& cfg);

}  // namespace emoji_attack

#endif  // EMOJI_ATTACK_SEQUENCE_SPACE_H_
