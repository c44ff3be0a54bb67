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

#include "emoji_attack/prediction.h"

#include <cmath>

namespace emoji_attack {

std::string ArgmaxLabel(const ProbabilityMap& probs) {
  if (probs.empty()) throw std::invalid_argument("empty probability map");
  auto best = probs.begin();
  for (auto it = probs.begin(); it != probs.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return best->first;
}

void ValidatePrediction(const Prediction& prediction) {
  if (prediction.label.empty()) throw ProtocolError("prediction has no label");
  if (!prediction.probs) return;
  const ProbabilityMap& probs = *prediction.probs;
  if (probs.empty()) throw ProtocolError("probs must not be empty");
  double sum = 0.0;
  double best = -1.0;
  for (const auto& [label, p] : probs) {
    if (!std::isfinite(p) || p < 0.0) {
      throw ProtocolError("probability for '" + label + "' is invalid");
    }
    sum += p;
    best = std::max(best, p);
  }
  if (std::abs(sum - 1.0) > kProbabilitySumTolerance) {
    throw ProtocolError("probs sum to " + std::to_string(sum) +
                        ", expected 1");
  }
  const auto it = probs.find(prediction.label);
  if (it == probs.end()) {
    throw ProtocolError("label '" + prediction.label + "' missing from probs");
  }
  if (it->second < best) {
    throw ProtocolError("label '" + prediction.label +
                        "' is not the argmax of probs");
  }
}

}  // namespace emoji_attack
