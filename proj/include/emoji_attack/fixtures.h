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

#ifndef EMOJI_ATTACK_FIXTURES_H_
#define EMOJI_ATTACK_FIXTURES_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emoji_attack/dataset.h"
#include "emoji_attack/lexicon.h"
#include "emoji_attack/sequence_space.h"
#include "emoji_attack/training.h"

namespace emoji_attack {

inline constexpr std::uint64_t kFixtureSeed = 20240521;
inline constexpr std::size_t kFixtureSize = 200;

// Synthetic three-class sentiment corpus. Sentences are short and carry one
// sentiment word; roughly half also end in an emoji whose everyday usage
// disagrees with its lexicon tag (crying-laughing under bad news and so on),
// which is what a trained classifier can be pushed around with. Every emoji
// surface used must exist in `lexicon`.
Dataset GenerateFixtureDataset(const EmojiLexicon& lexicon,
                               std::uint64_t seed = kFixtureSeed,
                               std::size_t size = kFixtureSize);

// Supervised corpus for the policy: for each example and role,
// `per_example` sequences of uniform length drawn uniformly from the
// sentiment subspace matching the example's label.
std::vector<SupervisedExample> GeneratePretrainCorpus(
    const Dataset& dataset, const EmojiLexicon& lexicon,
    const SequenceSpaceConfig& space, std::uint64_t seed = kFixtureSeed,
    std::size_t per_example = 1);

// JSONL: {"sentiment": ..., "role": "prefix"|"suffix", "sequence": [...]}.
std::string SerializePretrainCorpus(std::span<const SupervisedExample> corpus,
                                    const EmojiLexicon& lexicon);
std::vector<SupervisedExample> ParsePretrainCorpus(std::string_view content,
                                                   const EmojiLexicon& lexicon);
std::vector<SupervisedExample> LoadPretrainCorpus(const std::string& path,
                                                  const EmojiLexicon& lexicon);

}  // namespace emoji_attack

#endif  // EMOJI_ATTACK_FIXTURES_H_
