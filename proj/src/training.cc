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

#include "emoji_attack/training.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace emoji_attack {
namespace {

void ShuffleIndices(std::vector<std::size_t>& order, std::mt19937_64& rng) {
  for (std::size_t i = order.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(UniformUnit(rng) *
                                            static_cast<double>(i));
    std::swap(order[i - 1], order[std::min(j, i - 1)]);
  }
}

void CheckSequence(const Policy& policy, const EmojiSequence& seq) {
  const auto length = static_cast<int>(seq.size());
  if (length < policy.space().l_min || length > policy.space().l_max) {
    throw std::invalid_argument("training sequence length " +
                                std::to_string(length) +
                                " outside the policy space");
  }
  for (TokenId id : seq.tokens) {
    if (id < 0 || static_cast<std::size_t>(id) >= policy.num_emoji()) {
      throw std::invalid_argument("training token " + std::to_string(id) +
                                  " outside the emoji vocabulary");
    }
  }
}

}  // namespace

void TrainConfig::Validate() const {
  if (smooth_k < 1) throw std::invalid_argument("smooth_k must be >= 1");
  for (double v : {alpha_reward, beta_reward, lambda1, lambda2, mask_beta,
                   learning_rate, pretrain_learning_rate}) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("training weights must be finite");
    }
  }
  if (epochs < 0 || pretrain_epochs < 0) {
    throw std::invalid_argument("epoch counts must be >= 0");
  }
  if (batch_size == 0) throw std::invalid_argument("batch_size must be >= 1");
}

double SupervisedLoss(const Policy& policy,
                      std::span<const SupervisedExample> corpus) {
  if (corpus.empty()) throw std::invalid_argument("empty supervised corpus");
  double total = 0.0;
  for (const SupervisedExample& ex : corpus) {
    total -= policy.LogProb(ex.sequence, ex.sentiment, ex.role);
  }
  return total / static_cast<double>(corpus.size());
}

PolicyGradient SupervisedLossGradient(
    const Policy& policy, std::span<const SupervisedExample> corpus) {
  if (corpus.empty()) throw std::invalid_argument("empty supervised corpus");
  PolicyGradient grad = policy.ZeroGradient();
  const double weight = -1.0 / static_cast<double>(corpus.size());
  for (const SupervisedExample& ex : corpus) {
    policy.AccumulateLogProbGradient(ex.sequence, ex.sentiment, ex.role, weight,
                                     grad);
  }
  return grad;
}

AdamOptimizer::AdamOptimizer(const Policy& policy, double learning_rate,
                             double beta1, double beta2, double epsilon,
                             double weight_decay)
    : lr_(learning_rate),
      beta1_(beta1),
      beta2_(beta2),
      eps_(epsilon),
      decay_(weight_decay),
      m_(policy.ZeroGradient()),
      v_(policy.ZeroGradient()) {}

void AdamOptimizer::Descend(Policy& policy, const PolicyGradient& gradient) {
  ++step_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(step_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(step_));
  const auto update = [&](auto& param, auto& m, auto& v, const auto& g) {
    m = beta1_ * m + (1.0 - beta1_) * g;
    v = (beta2_ * v.array() + (1.0 - beta2_) * g.array().square()).matrix();
    param.array() -=
        lr_ * ((m.array() / c1) / ((v.array() / c2).sqrt() + eps_) +
               decay_ * param.array());
  };
  update(policy.theta(), m_.theta, v_.theta, gradient.theta);
  update(policy.elp_w(), m_.elp_w, v_.elp_w, gradient.elp_w);
  update(policy.elp_b(), m_.elp_b, v_.elp_b, gradient.elp_b);
}

PretrainResult SupervisedPretrain(Policy& policy,
                                  std::span<const SupervisedExample> corpus,
                                  const TrainConfig& cfg) {
  cfg.Validate();
  if (corpus.empty()) throw std::invalid_argument("empty supervised corpus");
  for (const SupervisedExample& ex : corpus) CheckSequence(policy, ex.sequence);

  PretrainResult result;
  std::mt19937_64 rng(cfg.seed);
  AdamOptimizer optimizer(policy, cfg.pretrain_learning_rate);
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<SupervisedExample> batch;

  result.loss_trace.push_back(SupervisedLoss(policy, corpus));
  for (int epoch = 0; epoch < cfg.pretrain_epochs; ++epoch) {
    ShuffleIndices(order, rng);
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), start + cfg.batch_size);
      batch.clear();
      for (std::size_t i = start; i < end; ++i) batch.push_back(corpus[order[i]]);
      optimizer.Descend(policy, SupervisedLossGradient(policy, batch));
    }
    result.loss_trace.push_back(SupervisedLoss(policy, corpus));
  }
  return result;
}

std::vector<double> SmoothReward(std::span<const double> raw, int k) {
  if (k < 1) throw std::invalid_argument("smoothing window must be >= 1");
  std::vector<double> out(raw.size());
  const auto window = static_cast<std::size_t>(k);
  for (std::size_t t = 0; t < raw.size(); ++t) {
    const std::size_t first = t + 1 > window ? t + 1 - window : 0;
    double sum = 0.0;
    for (std::size_t i = first; i <= t; ++i) sum += raw[i];
    out[t] = sum / static_cast<double>(t + 1 - first);
  }
  return out;
}

RewardBreakdown ComputeReward(const AttackTarget& target,
                              const CandidatePair& pair, Oracle& oracle,
                              const Policy& policy, const TrainConfig& cfg,
                              const AttackConfig& attack_cfg,
                              const EmojiLexicon& lexicon) {
  RewardBreakdown r;
  const std::size_t steps = pair.total_length();
  if (steps > 0 && policy.num_emoji() > 1) {
    const double entropy =
        policy.MeanStepEntropy(pair.prefix, target.sentiment, Role::kPrefix) *
            static_cast<double>(pair.prefix.size()) +
        policy.MeanStepEntropy(pair.suffix, target.sentiment, Role::kSuffix) *
            static_cast<double>(pair.suffix.size());
    r.diversity = entropy / static_cast<double>(steps) /
                  std::log(static_cast<double>(policy.num_emoji()));
  }

  r.consistent = !attack_cfg.require_consistency ||
                 SentimentConsistency(target.sentiment, pair.prefix,
                                      pair.suffix, lexicon) == 1;
  if (!r.consistent) {
    r.attack = -1.0;
  } else {
    const std::string adversarial =
        ConcatAdversarial(pair.prefix, target.text, pair.suffix, lexicon);
    r.queried = true;
    try {
      const Prediction prediction = oracle.Classify(adversarial);
      r.flipped = prediction.label != target.label;
      const bool hard = attack_cfg.hard_label_mode || oracle.hard_label() ||
                        !prediction.probs || prediction.probs->size() < 2 ||
                        !prediction.probs->contains(target.label);
      r.attack = hard ? (r.flipped ? 1.0 : -1.0)
                      : std::tanh(AdversarialLoss(*prediction.probs,
                                                  target.label));
    } catch (const AbstentionError&) {
      if (!attack_cfg.abstention_as_no_flip) throw;
      r.attack = -1.0;
    }
  }
  r.total = cfg.alpha_reward * r.attack + cfg.beta_reward * r.diversity;
  return r;
}

double CombinedLoss(double l_sem, double l_adv, double l_div, double lambda1,
                    double lambda2) {
  for (double v : {l_sem, l_adv, l_div, lambda1, lambda2}) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("combined loss inputs must be finite");
    }
  }
  return l_sem + lambda1 * l_adv + lambda2 * l_div;
}

PolicyGradient ReinforceGradient(const Policy& policy,
                                 std::span<const ReinforceSample> samples) {
  PolicyGradient grad = policy.ZeroGradient();
  if (samples.empty()) return grad;
  const double n = static_cast<double>(samples.size());
  double baseline = 0.0;
  for (const ReinforceSample& s : samples) baseline += s.reward;
  baseline /= n;
  for (const ReinforceSample& s : samples) {
    const double advantage = (s.reward - baseline) / n;
    if (advantage == 0.0) continue;
    policy.AccumulateLogProbGradient(s.prefix, s.sentiment, Role::kPrefix,
                                     advantage, grad);
    policy.AccumulateLogProbGradient(s.suffix, s.sentiment, Role::kSuffix,
                                     advantage, grad);
  }
  return grad;
}

RlTrainResult RlTrain(Policy& policy, std::span<const AttackTarget> dataset,
                      Oracle& oracle, const TrainConfig& cfg,
                      const AttackConfig& attack_cfg,
                      const EmojiLexicon& lexicon) {
  cfg.Validate();
  attack_cfg.Validate();
  if (dataset.empty()) throw std::invalid_argument("empty RL dataset");
  if (policy.num_emoji() != lexicon.size()) {
    throw std::invalid_argument("policy alphabet does not match the lexicon");
  }
  const SequenceSpaceConfig& space = policy.space();

  RlTrainResult result;
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  AdamOptimizer optimizer(policy, cfg.learning_rate);
  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), 0);
  const std::uint64_t queries_before = oracle.ledger().queries();
  std::vector<ReinforceSample> batch;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    ShuffleIndices(order, rng);
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), start + cfg.batch_size);
      batch.clear();
      double consistent = 0.0;
      double reward_sum = 0.0;
      double entropy_sum = 0.0;
      for (std::size_t i = start; i < end; ++i) {
        const AttackTarget& target = dataset[order[i]];
        const int length =
            space.l_min + std::min(space.num_lengths() - 1,
                                   static_cast<int>(UniformUnit(rng) *
                                                    space.num_lengths()));
        CandidatePair pair;
        pair.prefix =
            policy.Sample(target.sentiment, Role::kPrefix, length, rng).sequence;
        pair.suffix =
            policy.Sample(target.sentiment, Role::kSuffix, length, rng).sequence;
        RewardBreakdown reward;
        try {
          reward = ComputeReward(target, pair, oracle, policy, cfg, attack_cfg,
                                 lexicon);
        } catch (const OracleError& e) {
          result.queries = oracle.ledger().queries() - queries_before;
          throw TrainingError(std::string("RL training aborted: ") + e.what(),
                              std::move(result));
        }
        result.trace.raw.push_back(reward.total);
        const std::size_t t = result.trace.raw.size();
        const std::size_t window =
            std::min(t, static_cast<std::size_t>(cfg.smooth_k));
        double smoothed = 0.0;
        for (std::size_t j = t - window; j < t; ++j) {
          smoothed += result.trace.raw[j];
        }
        smoothed /= static_cast<double>(window);
        result.trace.smoothed.push_back(smoothed);

        consistent += reward.consistent ? 1.0 : 0.0;
        reward_sum += reward.total;
        entropy_sum += reward.diversity *
                       std::log(static_cast<double>(policy.num_emoji()));
        batch.push_back({target.sentiment, std::move(pair.prefix),
                         std::move(pair.suffix), smoothed});
      }
      PolicyGradient ascent = ReinforceGradient(policy, batch);
      ascent *= -1.0;
      optimizer.Descend(policy, ascent);

      const double n = static_cast<double>(batch.size());
      result.combined_loss.push_back(CombinedLoss(
          -std::log(std::max(consistent / n, kProbabilityFloor)),
          -reward_sum / n, -entropy_sum / n, cfg.lambda1, cfg.lambda2));
    }
  }
  result.queries = oracle.ledger().queries() - queries_before;
  return result;
}

}  // namespace emoji_attack
