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

#include "emoji_attack/benchmark.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

namespace emoji_attack {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(std::chrono::nanoseconds ns) {
  return std::chrono::duration<double>(ns).count();
}

struct ExampleOutcome {
  bool done = false;
  std::vector<ExampleRecord> records;
  std::uint64_t baseline_queries = 0;
  std::uint64_t attack_queries = 0;
};

std::string Surfaces(const EmojiSequence& seq, const EmojiLexicon& lexicon) {
  return JoinSurfaces(seq, lexicon);
}

// Runs one example; throws on oracle failure after filling `out` with the
// queries spent so far.
void RunExample(const Example& ex, Oracle& oracle,
                const CandidateSource& source, const EmojiLexicon& lexicon,
                const BenchmarkOptions& options, int max_k,
                ExampleOutcome& out) {
  Prediction baseline;
  bool abstained = false;
  out.baseline_queries = 1;
  try {
    baseline = oracle.Classify(ex.text);
  } catch (const AbstentionError&) {
    abstained = true;
  }
  if (abstained || baseline.label != ex.label) {
    ExampleRecord record;
    record.id = ex.id;
    record.skipped = true;
    record.baseline_label = abstained ? "" : baseline.label;
    out.records.push_back(std::move(record));
    out.done = true;
    return;
  }

  const AttackTarget target{ex.text, ex.label,
                            options.label_map.Coarsen(ex.label)};
  const auto gen_start = Clock::now();
  const RankedCandidates ranked =
      source.Rank(target, static_cast<std::size_t>(max_k),
                  ExampleSeed(options.seed, ex.id));
  const auto gen_time = Clock::now() - gen_start;

  for (const AttackConfig& cfg : options.configs) {
    ExampleRecord record;
    record.id = ex.id;
    record.top_k = cfg.top_k;
    record.baseline_label = baseline.label;
    AttackResult result;
    try {
      result = Attack(target, ranked.pairs, oracle, cfg, lexicon);
    } catch (const AttackError& e) {
      out.attack_queries += static_cast<std::uint64_t>(e.queries());
      throw;
    }
    out.attack_queries += static_cast<std::uint64_t>(result.queries);
    record.success = result.success;
    record.queries = result.queries;
    record.seconds = Seconds(gen_time + result.elapsed);
    record.loss = result.loss;
    record.stealth = result.stealth;
    record.flipped_label = result.flipped_label;
    if (result.pair) {
      record.prefix = Surfaces(result.pair->prefix, lexicon);
      record.suffix = Surfaces(result.pair->suffix, lexicon);
    }
    if (result.success) {
      record.adversarial_text = result.adversarial_text;
      record.pert_rate =
          PerturbationRate(ex.text, *result.adversarial_text, lexicon);
      if (record.pert_rate != 0.0) {
        throw BenchmarkInvariantError(
            "nonzero perturbation rate on example '" + ex.id + "'");
      }
    }
    if (record.queries > cfg.top_k) {
      throw BenchmarkInvariantError("query budget exceeded on example '" +
                                    ex.id + "'");
    }
    out.records.push_back(std::move(record));
  }
  out.done = true;
}

}  // namespace

std::uint64_t ExampleSeed(std::uint64_t seed, std::string_view id) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : id) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return seed ^ h;
}

BenchmarkReport RunBenchmark(const Dataset& dataset, Oracle& oracle,
                             const CandidateSource& source,
                             const EmojiLexicon& lexicon,
                             const BenchmarkOptions& options) {
  if (options.configs.empty()) {
    throw std::invalid_argument("benchmark needs at least one config");
  }
  if (options.jobs == 0) throw std::invalid_argument("jobs must be >= 1");
  int max_k = 0;
  for (std::size_t i = 0; i < options.configs.size(); ++i) {
    const AttackConfig& cfg = options.configs[i];
    cfg.Validate();
    for (std::size_t j = 0; j < i; ++j) {
      if (options.configs[j].top_k == cfg.top_k) {
        throw std::invalid_argument("duplicate top_k " +
                                    std::to_string(cfg.top_k));
      }
    }
    max_k = std::max(max_k, cfg.top_k);
  }
  for (const Example& ex : dataset.examples) {
    options.label_map.Coarsen(ex.label);  // fail before any query
  }

  const std::uint64_t ledger_start = oracle.ledger().queries();
  const std::size_t n = dataset.examples.size();
  std::vector<ExampleOutcome> outcomes(n);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::mutex error_mu;
  std::string first_error;
  std::exception_ptr invariant_error;

  const auto worker = [&] {
    for (;;) {
      if (abort.load()) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        RunExample(dataset.examples[i], oracle, source, lexicon, options,
                   max_k, outcomes[i]);
      } catch (const BenchmarkInvariantError&) {
        std::lock_guard lock(error_mu);
        if (!invariant_error) invariant_error = std::current_exception();
        abort = true;
      } catch (const std::exception& e) {
        std::lock_guard lock(error_mu);
        if (first_error.empty()) {
          first_error = "example '" + dataset.examples[i].id + "': " + e.what();
        }
        abort = true;
      }
    }
  };

  const std::size_t jobs = std::min(options.jobs, std::max<std::size_t>(n, 1));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (std::size_t j = 0; j < jobs; ++j) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }
  if (invariant_error) std::rethrow_exception(invariant_error);

  BenchmarkReport report;
  report.candidate_source = source.name();
  report.timing_concurrent = jobs > 1;
  report.complete = first_error.empty();
  report.error = first_error;
  for (const ExampleOutcome& o : outcomes) {
    report.baseline_queries += o.baseline_queries;
    report.attack_queries += o.attack_queries;
    if (!o.done) continue;
    ++report.examples;
    for (const ExampleRecord& r : o.records) {
      if (r.skipped) ++report.skipped;
      report.records.push_back(r);
    }
  }
  const std::uint64_t ledger_delta = oracle.ledger().queries() - ledger_start;
  if (ledger_delta != report.baseline_queries + report.attack_queries) {
    throw BenchmarkInvariantError(
        "query ledger delta " + std::to_string(ledger_delta) +
        " does not match accounted queries " +
        std::to_string(report.baseline_queries + report.attack_queries));
  }
  std::stable_sort(report.records.begin(), report.records.end(),
                   [](const ExampleRecord& a, const ExampleRecord& b) {
                     if (a.id != b.id) return a.id < b.id;
                     return a.top_k < b.top_k;
                   });

  for (const AttackConfig& cfg : options.configs) {
    ReportRow row;
    row.dataset = dataset.name;
    row.model = oracle.name();
    row.top_k = cfg.top_k;
    double seconds = 0.0;
    std::uint64_t queries = 0;
    for (const ExampleRecord& r : report.records) {
      if (r.skipped || r.top_k != cfg.top_k) continue;
      ++row.attacked;
      if (r.success) ++row.successes;
      seconds += r.seconds;
      queries += static_cast<std::uint64_t>(r.queries);
      row.pert_rate = std::max(row.pert_rate, r.pert_rate);
    }
    if (row.attacked > 0) {
      const auto denom = static_cast<double>(row.attacked);
      row.asr_percent = 100.0 * static_cast<double>(row.successes) / denom;
      row.avg_time_seconds = seconds / denom;
      row.avg_queries = static_cast<double>(queries) / denom;
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace emoji_attack
