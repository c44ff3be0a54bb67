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

#ifndef EMOJI_ATTACK_BENCHMARK_H_
#define EMOJI_ATTACK_BENCHMARK_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "emoji_attack/attack.h"
#include "emoji_attack/dataset.h"
#include "emoji_attack/lexicon.h"
#include "emoji_attack/oracle.h"
#include "emoji_attack/ranking.h"
#include "emoji_attack/sentiment.h"

namespace emoji_attack {

struct BenchmarkOptions {
  // One row per config, usually differing only in top_k. Candidates are
  // ranked once per example at the largest k so the rows are nested.
  std::vector<AttackConfig> configs;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  LabelSentimentMap label_map = LabelSentimentMap::Identity();
};

// Outcome of one (example, config) attack, or of a skipped example.
struct ExampleRecord {
  std::string id;
  int top_k = 0;
  bool skipped = false;  // oracle already wrong (or abstained) on x
  std::string baseline_label;
  bool success = false;
  int queries = 0;
  double seconds = 0.0;  // candidate generation + attack
  double pert_rate = 0.0;
  std::optional<std::string> adversarial_text;
  std::optional<std::string> prefix;
  std::optional<std::string> suffix;
  std::optional<std::string> flipped_label;
  std::optional<double> loss;
  std::optional<double> stealth;
};

struct ReportRow {
  std::string dataset;
  std::string model;
  int top_k = 0;
  double pert_rate = 0.0;
  double asr_percent = 0.0;
  double avg_time_seconds = 0.0;
  double avg_queries = 0.0;
  std::size_t attacked = 0;
  std::size_t successes = 0;
};

struct BenchmarkReport {
  std::vector<ReportRow> rows;        // config order
  std::vector<ExampleRecord> records;  // by example id, then top_k
  std::string candidate_source;
  bool complete = true;
  std::string error;                  // set when !complete
  bool timing_concurrent = false;     // jobs > 1
  std::size_t examples = 0;
  std::size_t skipped = 0;
  std::uint64_t baseline_queries = 0;
  std::uint64_t attack_queries = 0;
};

// Raised when a run violates one of its own invariants (nonzero
// perturbation, ledger mismatch). These indicate bugs, not bad data.
class BenchmarkInvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Attacks every example under every config. An oracle failure stops the run
// and returns what finished so far with complete = false.
BenchmarkReport RunBenchmark(const Dataset& dataset, Oracle& oracle,
                             const CandidateSource& source,
                             const EmojiLexicon& lexicon,
                             const BenchmarkOptions& options);

// Per-example candidate seed; depends only on the run seed and the id.
std::uint64_t ExampleSeed(std::uint64_t seed, std::string_view id);

}  // namespace emoji_attack

#endif  // EMOJI_ATTACK_BENCHMARK_H_
