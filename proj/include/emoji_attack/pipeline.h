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

#ifndef EMOJI_ATTACK_PIPELINE_H_
#define EMOJI_ATTACK_PIPELINE_H_

#include <span>
#include <vector>

#include "emoji_attack/attack.h"
#include "emoji_attack/dataset.h"
#include "emoji_attack/lexicon.h"
#include "emoji_attack/naive_bayes.h"
#include "emoji_attack/policy.h"
#include "emoji_attack/sentiment.h"
#include "emoji_attack/training.h"

namespace emoji_attack {

// The built-in oracle: naive Bayes fit on the whole dataset.
NaiveBayesClassifier TrainBuiltinOracle(const Dataset& dataset,
                                        const EmojiLexicon& lexicon);

std::vector<AttackTarget> ToTargets(const Dataset& dataset,
                                    const LabelSentimentMap& label_map);

struct TrainedPolicy {
  Policy policy;
  PretrainResult pretrain;
  RlTrainResult rl;
};

// Supervised pretraining on `corpus` followed by REINFORCE against `oracle`.
TrainedPolicy TrainTwoPhase(std::span<const AttackTarget> targets,
                            std::span<const SupervisedExample> corpus,
                            Oracle& oracle, const EmojiLexicon& lexicon,
                            const TrainConfig& train_cfg,
                            const AttackConfig& attack_cfg);

}  // namespace emoji_attack

#endif  // EMOJI_ATTACK_PIPELINE_H_
