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

#ifndef EMOJI_ATTACK_CHECKPOINT_H_
#define EMOJI_ATTACK_CHECKPOINT_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "emoji_attack/lexicon.h"
#include "emoji_attack/policy.h"
#include "json.hpp"

namespace emoji_attack {

inline constexpr int kCheckpointVersion = 1;

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TrainingMetadata {
  std::uint64_t seed = 0;
  int pretrain_epochs = 0;
  int epochs = 0;
};

struct LoadedPolicy {
  Policy policy;
  TrainingMetadata metadata;
};

// Versioned JSON:
//   {"format": "emoji-attack-policy", "version": 1,
//    "space": {"l_min": .., "l_max": ..}, "vocabulary_hash": "<fnv64 hex>",
//    "num_emoji": N, "theta": [[...], ...], "elp_w": [[...], ...],
//    "elp_b": [...], "training": {"seed": .., "pretrain_epochs": ..,
//    "epochs": ..}}
// Doubles are written with round-trip precision.
nlohmann::json PolicyToJson(const Policy& policy, const EmojiLexicon& lexicon,
                            const TrainingMetadata& metadata);
void SavePolicy(const Policy& policy, const EmojiLexicon& lexicon,
                const TrainingMetadata& metadata, const std::string& path);

// Throws CheckpointError on a malformed file, an unknown version, or a
// vocabulary hash that differs from `lexicon`.
LoadedPolicy PolicyFromJson(const nlohmann::json& doc,
                            const EmojiLexicon& lexicon);
LoadedPolicy LoadPolicy(const std::string& path, const EmojiLexicon& lexicon);

}  // namespace emoji_attack

#endif  // EMOJI_ATTACK_CHECKPOINT_H_
