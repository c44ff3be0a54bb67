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

#ifndef EMOJI_ATTACK_POLICY_H_
#define EMOJI_ATTACK_POLICY_H_

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <utility>

#include "emoji_attack/lexicon.h"
#include "emoji_attack/sequence_space.h"

namespace emoji_attack {

enum class Role { kPrefix = 0, kSuffix = 1 };

std::string_view ToString(Role role);

inline constexpr TokenId kStartToken = -1;

// What one generation step conditions on.
struct StepContext {
  Sentiment sentiment = Sentiment::kNeutral;
  Role role = Role::kPrefix;
  int position = 0;
  TokenId previous = kStartToken;
};

Eigen::VectorXd Softmax(const Eigen::VectorXd& logits);

// Emoji logits processor: softmax(W p_in + b). Throws std::invalid_argument on
// mismatched dimensions.
Eigen::VectorXd ElpTransform(const Eigen::VectorXd& p_in,
                             const Eigen::MatrixXd& w,
                             const Eigen::VectorXd& b);

// Shannon entropy in nats.
double Entropy(const Eigen::VectorXd& p);

// Same shape as the policy parameters.
struct PolicyGradient {
  Eigen::MatrixXd theta;
  Eigen::MatrixXd elp_w;
  Eigen::VectorXd elp_b;

  void SetZero();
  PolicyGradient& operator+=(const PolicyGradient& other);
  PolicyGradient& operator*=(double scale);
  double SquaredNorm() const;
};

struct SampledSequence {
  EmojiSequence sequence;
  double log_prob = 0.0;
};

// pi_theta: autoregressive emoji policy. Logits tables are indexed by
// (sentiment, role, position, previous token); each step's softmax passes
// through a shared ELP layer. Frozen instances are safe to share across
// threads.
class Policy {
 public:
  // elp_scale <= 0 selects num_emoji, so uniform logits stay uniform and a
  // one-hot table row stays sharply peaked after the ELP.
  Policy(std::size_t num_emoji, SequenceSpaceConfig space,
         double elp_scale = 0.0);

  std::size_t num_emoji() const { return num_emoji_; }
  const SequenceSpaceConfig& space() const { return space_; }
  std::size_t num_contexts() const {
    return static_cast<std::size_t>(theta_.rows());
  }

  Eigen::MatrixXd& theta() { return theta_; }
  const Eigen::MatrixXd& theta() const { return theta_; }
  Eigen::MatrixXd& elp_w() { return elp_w_; }
  const Eigen::MatrixXd& elp_w() const { return elp_w_; }
  Eigen::VectorXd& elp_b() { return elp_b_; }
  const Eigen::VectorXd& elp_b() const { return elp_b_; }

  Eigen::Index ContextRow(const StepContext& ctx) const;

  // Table softmax before the ELP.
  Eigen::VectorXd StepInput(const StepContext& ctx) const;
  // Final per-step distribution over emoji tokens.
  Eigen::VectorXd StepDistribution(const StepContext& ctx) const;

  double LogProb(const EmojiSequence& seq, Sentiment sentiment,
                 Role role) const;
  // Mean entropy of the step distributions visited while emitting `seq`.
  double MeanStepEntropy(const EmojiSequence& seq, Sentiment sentiment,
                         Role role) const;

  // Throws std::invalid_argument when length is outside the space.
  SampledSequence Sample(Sentiment sentiment, Role role, int length,
                         std::mt19937_64& rng) const;
  SampledSequence Sample(Sentiment sentiment, Role role, int length,
                         std::uint64_t seed) const;

  PolicyGradient ZeroGradient() const;
  // grad += weight * d log pi(seq) / d params.
  void AccumulateLogProbGradient(const EmojiSequence& seq, Sentiment sentiment,
                                 Role role, double weight,
                                 PolicyGradient& grad) const;
  // params += step * direction.
  void Apply(const PolicyGradient& direction, double step);

 private:
  std::size_t num_emoji_;
  SequenceSpaceConfig space_;
  Eigen::MatrixXd theta_;  // rows: contexts, cols: emoji
  Eigen::MatrixXd elp_w_;
  Eigen::VectorXd elp_b_;
};

// Uniform double in [0, 1) from 53 random bits; stable across platforms.
double UniformUnit(std::mt19937_64& rng);

}  // namespace emoji_attack

#endif  // EMOJI_ATTACK_POLICY_H_
