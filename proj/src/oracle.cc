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

#include "emoji_attack/oracle.h"

#include <stdexcept>

namespace emoji_attack {

void QueryLedger::RecordLatency(std::chrono::nanoseconds latency) {
  total_latency_ns_.fetch_add(latency.count(), std::memory_order_relaxed);
  if (ring_capacity_ == 0) return;
  std::lock_guard<std::mutex> lock(ring_mu_);
  ring_.push_back({std::chrono::system_clock::now(), latency});
  if (ring_.size() > ring_capacity_) ring_.pop_front();
}

std::vector<QueryLedger::CallRecord> QueryLedger::recent_calls() const {
  std::lock_guard<std::mutex> lock(ring_mu_);
  return {ring_.begin(), ring_.end()};
}

Prediction Oracle::Classify(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("cannot classify empty text");
  ledger_.RecordQuery();
  const auto start = std::chrono::steady_clock::now();
  Prediction prediction = DoClassify(text);
  const auto latency = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - start);
  ledger_.RecordLatency(latency);
  prediction.latency = latency;
  ValidatePrediction(prediction);
  return prediction;
}

}  // namespace emoji_attack
