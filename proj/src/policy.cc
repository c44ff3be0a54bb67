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

#include "emoji_attack/policy.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace emoji_attack {

std::string_view ToString(Role role) {
  return role == Role::kPrefix ? "prefix" : "suffix";
}

Eigen::VectorXd Softmax(const Eigen::VectorXd& logits) {
  const double max = logits.maxCoeff();
  Eigen::VectorXd out = (logits.array() - max).exp();
  return out / out.sum();
}

Eigen::VectorXd ElpTransform(const Eigen::VectorXd& p_in,
                             const Eigen::MatrixXd& w,
                             const Eigen::VectorXd& b) {
  if (w.rows() != b.size() || w.cols() != p_in.size()) {
    throw std::invalid_argument("ELP dimension mismatch");
  }
  return Softmax(w * p_in + b);
}

double Entropy(const Eigen::VectorXd& p) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) h -= p[i] * std::log(p[i]);
  }
  return h;
}

double UniformUnit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void PolicyGradient::SetZero() {
  theta.setZero();
  elp_w.setZero();
  elp_b.setZero();
}

PolicyGradient& PolicyGradient::operator+=(const PolicyGradient& other) {
  theta += other.theta;
  elp_w += other.elp_w;
  elp_b += other.elp_b;
  return *this;
}

PolicyGradient& PolicyGradient::operator*=(double scale) {
  theta *= scale;
  elp_w *= scale;
  elp_b *= scale;
  return *this;
}

double PolicyGradient::SquaredNorm() const {
  return theta.squaredNorm() + elp_w.squaredNorm() + elp_b.squaredNorm();
}

Policy::Policy(std::size_t num_emoji, SequenceSpaceConfig space,
               double elp_scale)
    : num_emoji_(num_emoji), space_(space) {
  if (num_emoji == 0) throw std::invalid_argument("policy needs emoji tokens");
  space_.Validate();
  const auto n = static_cast<Eigen::Index>(num_emoji);
  const Eigen::Index positions = std::max(space_.l_max, 1);
  const Eigen::Index rows = 3 * 2 * positions * (n + 1);
  theta_ = Eigen::MatrixXd::Zero(rows, n);
  const double scale =
      elp_scale > 0.0 ? elp_scale : static_cast<double>(num_emoji);
  elp_w_ = scale * Eigen::MatrixXd::Identity(n, n);
  elp_b_ = Eigen::VectorXd::Zero(n);
}

Eigen::Index Policy::ContextRow(const StepContext& ctx) const {
  const Eigen::Index positions = std::max(space_.l_max, 1);
  const auto n = static_cast<Eigen::Index>(num_emoji_);
  if (ctx.position < 0 || ctx.position >= positions) {
    throw std::out_of_range("step position " + std::to_string(ctx.position));
  }
  if (ctx.previous < kStartToken || ctx.previous >= n) {
    throw std::out_of_range("previous token " + std::to_string(ctx.previous));
  }
  const Eigen::Index sentiment = static_cast<Eigen::Index>(ctx.sentiment);
  const Eigen::Index role = static_cast<Eigen::Index>(ctx.role);
  return ((sentiment * 2 + role) * positions + ctx.position) * (n + 1) +
         (ctx.previous + 1);
}

Eigen::VectorXd Policy::StepInput(const StepContext& ctx) const {
  return Softmax(theta_.row(ContextRow(ctx)).transpose());
}

Eigen::VectorXd Policy::StepDistribution(const StepContext& ctx) const {
  return ElpTransform(StepInput(ctx), elp_w_, elp_b_);
}

double Policy::LogProb(const EmojiSequence& seq, Sentiment sentiment,
                       Role role) const {
  double total = 0.0;
  StepContext ctx{sentiment, role, 0, kStartToken};
  for (TokenId token : seq.tokens) {
    const Eigen::VectorXd q = StepDistribution(ctx);
    total += std::log(q[token]);
    ++ctx.position;
    ctx.previous = token;
  }
  return total;
}

double Policy::MeanStepEntropy(const EmojiSequence& seq, Sentiment sentiment,
                               Role role) const {
  if (seq.empty()) return 0.0;
  double total = 0.0;
  StepContext ctx{sentiment, role, 0, kStartToken};
  for (TokenId token : seq.tokens) {
    total += Entropy(StepDistribution(ctx));
    ++ctx.position;
    ctx.previous = token;
  }
  return total / static_cast<double>(seq.size());
}

SampledSequence Policy::Sample(Sentiment sentiment, Role role, int length,
                               std::mt19937_64& rng) const {
  if (length < space_.l_min || length > space_.l_max) {
    throw std::invalid_argument("sample length " + std::to_string(length) +
                                " outside [" + std::to_string(space_.l_min) +
                                ", " + std::to_string(space_.l_max) + "]");
  }
  SampledSequence out;
  StepContext ctx{sentiment, role, 0, kStartToken};
  for (int t = 0; t < length; ++t) {
    const Eigen::VectorXd q = StepDistribution(ctx);
    const double u = UniformUnit(rng);
    double cumulative = 0.0;
    Eigen::Index chosen = q.size() - 1;
    for (Eigen::Index i = 0; i < q.size(); ++i) {
      cumulative += q[i];
      if (u < cumulative) {
        chosen = i;
        break;
      }
    }
    const auto token = static_cast<TokenId>(chosen);
    out.sequence.tokens.push_back(token);
    out.log_prob += std::log(q[chosen]);
    ++ctx.position;
    ctx.previous = token;
  }
  return out;
}

SampledSequence Policy::Sample(Sentiment sentiment, Role role, int length,
                               std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  return Sample(sentiment, role, length, rng);
}

PolicyGradient Policy::ZeroGradient() const {
  return PolicyGradient{Eigen::MatrixXd::Zero(theta_.rows(), theta_.cols()),
                        Eigen::MatrixXd::Zero(elp_w_.rows(), elp_w_.cols()),
                        Eigen::VectorXd::Zero(elp_b_.size())};
}

void Policy::AccumulateLogProbGradient(const EmojiSequence& seq,
                                       Sentiment sentiment, Role role,
                                       double weight,
                                       PolicyGradient& grad) const {
  StepContext ctx{sentiment, role, 0, kStartToken};
  for (TokenId token : seq.tokens) {
    const Eigen::Index row = ContextRow(ctx);
    const Eigen::VectorXd p = Softmax(theta_.row(row).transpose());
    const Eigen::VectorXd q = Softmax(elp_w_ * p + elp_b_);
    // d log q[token] / d u, with u = W p + b.
    Eigen::VectorXd g_u = -q;
    g_u[token] += 1.0;
    grad.elp_b += weight * g_u;
    grad.elp_w.noalias() += weight * g_u * p.transpose();
    const Eigen::VectorXd g_p = elp_w_.transpose() * g_u;
    const double mean = p.dot(g_p);
    grad.theta.row(row) +=
        weight * (p.array() * (g_p.array() - mean)).matrix().transpose();
    ++ctx.position;
    ctx.previous = token;
  }
}

void Policy::Apply(const PolicyGradient& direction, double step) {
  theta_ += step * direction.theta;
  elp_w_ += step * direction.elp_w;
  elp_b_ += step * direction.elp_b;
}

}  // namespace emoji_attack
