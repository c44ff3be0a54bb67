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

#ifndef EMOJI_ATTACK_PREDICTION_H_
#define EMOJI_ATTACK_PREDICTION_H_

#include <chrono>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace emoji_attack {

// Labels iterate in ascending order, which is also the tie-break order.
using ProbabilityMap = std::map<std::string, double, std::less<>>;

inline constexpr double kProbabilitySumTolerance = 1e-6;

struct Prediction {
  std::string label;
  std::optional<ProbabilityMap> probs;  // absent for hard-label oracles
  std::chrono::nanoseconds latency{0};
};

// Any failure to obtain a classification.
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The remote side answered, but not per the wire protocol.
class ProtocolError : public OracleError {
 public:
  using OracleError::OracleError;
};

// A hard-label oracle whose answer names zero or several labels.
class AbstentionError : public OracleError {
 public:
  using OracleError::OracleError;
};

// First label with the highest probability (ascending label order on ties).
std::string ArgmaxLabel(const ProbabilityMap& probs);

// Throws ProtocolError unless probs (when present) are finite, non-negative,
// sum to 1 within kProbabilitySumTolerance and have `label` as an argmax.
void ValidatePrediction(const Prediction& prediction);

}  // namespace emoji_attack

#endif  // EMOJI_ATTACK_PREDICTION_H_
