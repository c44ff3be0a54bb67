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

#ifndef EMOJI_ATTACK_ORACLE_H_
#define EMOJI_ATTACK_ORACLE_H_

#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "emoji_attack/prediction.h"

namespace emoji_attack {

// Counts logical classifications. Transport retries inside an adapter never
// show up here; each Oracle::Classify call increments `queries` exactly once,
// including calls that end in an error.
class QueryLedger {
 public:
  struct CallRecord {
    std::chrono::system_clock::time_point timestamp;
    std::chrono::nanoseconds latency;
  };

  explicit QueryLedger(std::size_t ring_capacity = 256)
      : ring_capacity_(ring_capacity) {}

  QueryLedger(const QueryLedger&) = delete;
  QueryLedger& operator=(const QueryLedger&) = delete;

  void RecordQuery() { queries_.fetch_add(1, std::memory_order_relaxed); }
  void RecordLatency(std::chrono::nanoseconds latency);

  std::uint64_t queries() const {
    return queries_.load(std::memory_order_relaxed);
  }
  std::chrono::nanoseconds total_latency() const {
    return std::chrono::nanoseconds(
        total_latency_ns_.load(std::memory_order_relaxed));
  }
  std::vector<CallRecord> recent_calls() const;

 private:
  std::atomic<std::uint64_t> queries_{0};
  std::atomic<std::int64_t> total_latency_ns_{0};
  std::size_t ring_capacity_;
  mutable std::mutex ring_mu_;
  std::deque<CallRecord> ring_;
};

// The target classifier f_tgt. Implementations must be safe for concurrent
// Classify calls.
class Oracle {
 public:
  virtual ~Oracle() = default;

  // Throws std::invalid_argument on empty text, OracleError on failure.
  Prediction Classify(std::string_view text);

  virtual std::string name() const = 0;

  // True when predictions never carry probabilities.
  virtual bool hard_label() const { return false; }

  const QueryLedger& ledger() const { return ledger_; }

 protected:
  virtual Prediction DoClassify(std::string_view text) = 0;

 private:
  QueryLedger ledger_;
};

// Wraps a callable; handy for toy classifiers and test doubles.
class FunctionOracle : public Oracle {
 public:
  using Fn = std::function<Prediction(std::string_view)>;

  FunctionOracle(std::string name, Fn fn, bool hard_label = false)
      : name_(std::move(name)), fn_(std::move(fn)), hard_label_(hard_label) {}

  std::string name() const override { return name_; }
  bool hard_label() const override { return hard_label_; }

 protected:
  Prediction DoClassify(std::string_view text) override { return fn_(text); }

 private:
  std::string name_;
  Fn fn_;
  bool hard_label_;
};

}  // namespace emoji_attack

#endif  // EMOJI_ATTACK_ORACLE_H_
