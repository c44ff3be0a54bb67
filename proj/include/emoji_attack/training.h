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

#ifndef EMOJI_ATTACK_TRAINING_H_
#define EMOJI_ATTACK_TRAINING_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "emoji_attack/attack.h"
#include "emoji_attack/lexicon.h"
#include "emoji_attack/oracle.h"
#include "emoji_attack/policy.h"

namespace emoji_attack {

struct TrainConfig {
  // Reward weights: R = alpha_reward * R_atk + beta_reward * R_div.
  double alpha_reward = 1.0;
  double beta_reward = 0.05;
  // Combined-loss weights: L = L_sem + lambda1 * L_adv + lambda2 * L_div.
  double lambda1 = 1.0;
  double lambda2 = 0.05;
  int smooth_k = 2;  // trailing reward window
  double mask_beta = 0.5;
  double learning_rate = 0.05;
  int epochs = 60;
  std::uint64_t seed = 7;
  // Phase-one settings.
  double pretrain_learning_rate = 0.05;
  int pretrain_epochs = 30;
  std::size_t batch_size = 16;

  // Throws std::invalid_argument on smooth_k < 1 or non-finite weights.
  void Validate() const;
};

// One supervised example: the sequence the policy should emit for a text of
// the given sentiment in the given role.
struct SupervisedExample {
  Sentiment sentiment = Sentiment::kNeutral;
  Role role = Role::kPrefix;
  EmojiSequence sequence;
};

// Mean over examples of -sum_t log pi(s_t | s_<t, x).
double SupervisedLoss(const Policy& policy,
                      std::span<const SupervisedExample> corpus);
// Analytic gradient of SupervisedLoss.
PolicyGradient SupervisedLossGradient(const Policy& policy,
                                      std::span<const SupervisedExample> corpus);

// Adam with decoupled weight decay over the full parameter set.
class AdamOptimizer {
 public:
  explicit AdamOptimizer(const Policy& policy, double learning_rate,
                         double beta1 = 0.9, double beta2 = 0.999,
                         double epsilon = 1e-8, double weight_decay = 0.0);

  // Moves parameters along -gradient.
  void Descend(Policy& policy, const PolicyGradient& gradient);

 private:
  double lr_, beta1_, beta2_, eps_, decay_;
  long long step_ = 0;
  PolicyGradient m_, v_;
};

struct PretrainResult {
  std::vector<double> loss_trace;  // full-corpus loss before each epoch + final
};

// Phase one. Throws std::invalid_argument on an empty corpus or a sequence
// outside the policy's space or alphabet.
PretrainResult SupervisedPretrain(Policy& policy,
                                  std::span<const SupervisedExample> corpus,
                                  const TrainConfig& cfg);

struct RewardTrace {
  std::vector<double> raw;
  std::vector<double> smoothed;
};

// Trailing mean over min(k, t + 1) values. Throws std::invalid_argument on
// k < 1.
std::vector<double> SmoothReward(std::span<const double> raw, int k);

struct RewardBreakdown {
  double attack = 0.0;     // R_atk in [-1, 1]
  double diversity = 0.0;  // R_div in [0, 1]
  double total = 0.0;
  bool consistent = true;
  bool queried = false;
  bool flipped = false;
};

// alpha * R_atk + beta * R_div. R_atk is tanh of the adversarial loss for
// soft-label oracles and +1/-1 for flip/no flip otherwise; pairs violating a
// required consistency constraint score -1 without a query. R_div is the mean
// per-step entropy normalized by log |V_e|.
RewardBreakdown ComputeReward(const AttackTarget& target,
                              const CandidatePair& pair, Oracle& oracle,
                              const Policy& policy, const TrainConfig& cfg,
                              const AttackConfig& attack_cfg,
                              const EmojiLexicon& lexicon);

// L_sem + lambda1 L_adv + lambda2 L_div. Throws std::invalid_argument on
// non-finite input.
double CombinedLoss(double l_sem, double l_adv, double l_div, double lambda1,
                    double lambda2);

// One sampled (prefix, suffix) pair with its (smoothed) reward.
struct ReinforceSample {
  Sentiment sentiment = Sentiment::kNeutral;
  EmojiSequence prefix;
  EmojiSequence suffix;
  double reward = 0.0;
};

// Batch-mean-baseline REINFORCE estimate of grad E[R]:
//   (1/N) sum_i (R_i - mean R) grad log pi(prefix_i, suffix_i).
PolicyGradient ReinforceGradient(const Policy& policy,
                                 std::span<const ReinforceSample> samples);

struct RlTrainResult {
  RewardTrace trace;
  std::vector<double> combined_loss;  // one entry per batch
  std::uint64_t queries = 0;
};

// Oracle failure during phase two; carries everything recorded so far.
class TrainingError : public std::runtime_error {
 public:
  TrainingError(const std::string& what, RlTrainResult partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const RlTrainResult& partial() const { return partial_; }

 private:
  RlTrainResult partial_;
};

// Phase two: REINFORCE with smoothed rewards against the oracle. Each step
// draws one length l uniformly from the space and samples prefix and suffix
// of that length independently. Throws std::invalid_argument on an empty
// dataset and TrainingError on oracle failure.
RlTrainResult RlTrain(Policy& policy, std::span<const AttackTarget> dataset,
                      Oracle& oracle, const TrainConfig& cfg,
                      const AttackConfig& attack_cfg,
                      const EmojiLexicon& lexicon);

}  // namespace emoji_attack

#endif  // EMOJI_ATTACK_TRAINING_H_
