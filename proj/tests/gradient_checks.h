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

// Gradient checks shared by the unit and acceptance suites.

#ifndef EMOJI_ATTACK_TESTS_GRADIENT_CHECKS_H_
#define EMOJI_ATTACK_TESTS_GRADIENT_CHECKS_H_

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "emoji_attack/policy.h"
#include "emoji_attack/training.h"

namespace emoji_attack::testing {

// Every parameter of the policy, in a fixed order.
inline std::vector<double*> Parameters(Policy& policy) {
  std::vector<double*> out;
  for (Eigen::Index i = 0; i < policy.theta().size(); ++i) {
    out.push_back(policy.theta().data() + i);
  }
  for (Eigen::Index i = 0; i < policy.elp_w().size(); ++i) {
    out.push_back(policy.elp_w().data() + i);
  }
  for (Eigen::Index i = 0; i < policy.elp_b().size(); ++i) {
    out.push_back(policy.elp_b().data() + i);
  }
  return out;
}

inline std::vector<double> Flatten(const PolicyGradient& g) {
  std::vector<double> out(g.theta.data(), g.theta.data() + g.theta.size());
  out.insert(out.end(), g.elp_w.data(), g.elp_w.data() + g.elp_w.size());
  out.insert(out.end(), g.elp_b.data(), g.elp_b.data() + g.elp_b.size());
  return out;
}

inline std::vector<double> CentralDifferences(
    Policy& policy, const std::function<double(const Policy&)>& f,
    double h = 1e-5) {
  std::vector<double> out;
  for (double* p : Parameters(policy)) {
    const double orig = *p;
    *p = orig + h;
    const double up = f(policy);
    *p = orig - h;
    const double down = f(policy);
    *p = orig;
    out.push_back((up - down) / (2 * h));
  }
  return out;
}

inline double RelativeError(const std::vector<double>& a,
                            const std::vector<double>& b) {
  double diff = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += (a[i] - b[i]) * (a[i] - b[i]);
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return std::sqrt(diff) / std::max({std::sqrt(na), std::sqrt(nb), 1e-300});
}

inline void RandomizePolicy(Policy& policy, std::uint64_t seed,
                            double scale = 0.5) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, scale);
  for (double* p : Parameters(policy)) *p += n(rng);
}

// Analytic supervised-loss gradient vs central differences on a four-token
// policy with random parameters.
inline double SupervisedGradientError() {
  Policy policy(4, {1, 3});
  RandomizePolicy(policy, 101);
  const std::vector<SupervisedExample> corpus = {
      {Sentiment::kPositive, Role::kPrefix, {{0, 2, 1}}},
      {Sentiment::kPositive, Role::kSuffix, {{3}}},
      {Sentiment::kNegative, Role::kPrefix, {{1, 1}}},
      {Sentiment::kNeutral, Role::kSuffix, {{2, 0, 3}}},
  };
  const auto analytic = Flatten(SupervisedLossGradient(policy, corpus));
  const auto numeric = CentralDifferences(
      policy, [&](const Policy& p) { return SupervisedLoss(p, corpus); });
  return RelativeError(analytic, numeric);
}

// REINFORCE estimate vs the exact gradient of E[R] on a two-token policy
// with l = 1 (zero-initialized unless `scale` > 0), where
// E[R] = sum_{a,b} pi_pre(a) pi_suf(b) R(a, b) is enumerated and
// differentiated numerically. Samples are processed in
// batches of `batch` so the batch-mean baseline matches training.
inline double ReinforceGradientError(std::size_t samples, double scale = 0.0,
                                     std::size_t batch = 100000) {
  Policy policy(2, {1, 1});
  if (scale > 0) RandomizePolicy(policy, 7, scale);
  const Sentiment sentiment = Sentiment::kNegative;
  const double reward[2][2] = {{1.0, -0.5}, {0.25, 2.0}};

  const auto expected_reward = [&](const Policy& p) {
    double total = 0;
    for (TokenId a = 0; a < 2; ++a) {
      for (TokenId b = 0; b < 2; ++b) {
        total += std::exp(p.LogProb({{a}}, sentiment, Role::kPrefix) +
                          p.LogProb({{b}}, sentiment, Role::kSuffix)) *
                 reward[a][b];
      }
    }
    return total;
  };
  const auto exact = CentralDifferences(policy, expected_reward, 1e-6);

  std::mt19937_64 rng(2024);
  PolicyGradient estimate = policy.ZeroGradient();
  std::vector<ReinforceSample> chunk;
  std::size_t done = 0;
  while (done < samples) {
    const std::size_t n = std::min(batch, samples - done);
    chunk.clear();
    for (std::size_t i = 0; i < n; ++i) {
      ReinforceSample s;
      s.sentiment = sentiment;
      s.prefix = policy.Sample(sentiment, Role::kPrefix, 1, rng).sequence;
      s.suffix = policy.Sample(sentiment, Role::kSuffix, 1, rng).sequence;
      s.reward = reward[s.prefix.tokens[0]][s.suffix.tokens[0]];
      chunk.push_back(std::move(s));
    }
    PolicyGradient g = ReinforceGradient(policy, chunk);
    g *= static_cast<double>(n);
    estimate += g;
    done += n;
  }
  estimate *= 1.0 / static_cast<double>(samples);
  return RelativeError(Flatten(estimate), exact);
}

}  // namespace emoji_attack::testing

#endif  // EMOJI_ATTACK_TESTS_GRADIENT_CHECKS_H_
