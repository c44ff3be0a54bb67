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

#include "emoji_attack/pipeline.h"

namespace emoji_attack {

NaiveBayesClassifier TrainBuiltinOracle(const Dataset& dataset,
                                        const EmojiLexicon& lexicon) {
  std::vector<LabeledText> corpus;
  corpus.reserve(dataset.examples.size());
  for (const Example& ex : dataset.examples) {
    corpus.push_back({ex.text, ex.label});
  }
  return NaiveBayesClassifier::Train(corpus, lexicon);
}

std::vector<AttackTarget> ToTargets(const Dataset& dataset,
                                    const LabelSentimentMap& label_map) {
  std::vector<AttackTarget> targets;
  targets.reserve(dataset.examples.size());
  for (const Example& ex : dataset.examples) {
    targets.push_back({ex.text, ex.label, label_map.Coarsen(ex.label)});
  }
  return targets;
}

TrainedPolicy TrainTwoPhase(std::span<const AttackTarget> targets,
                            std::span<const SupervisedExample> corpus,
                            Oracle& oracle, const EmojiLexicon& lexicon,
                            const TrainConfig& train_cfg,
                            const AttackConfig& attack_cfg) {
  TrainedPolicy out{Policy(lexicon.size(), attack_cfg.space), {}, {}};
  out.pretrain = SupervisedPretrain(out.policy, corpus, train_cfg);
  out.rl = RlTrain(out.policy, targets, oracle, train_cfg, attack_cfg, lexicon);
  return out;
}

}  // namespace emoji_attack
