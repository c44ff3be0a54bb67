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

#ifndef EMOJI_ATTACK_REPORT_H_
#define EMOJI_ATTACK_REPORT_H_

#include <stdexcept>
#include <string>
#include <string_view>

#include "emoji_attack/benchmark.h"

namespace emoji_attack {

enum class ReportFormat { kMarkdown, kCsv, kJson };

// "markdown" (or "md"), "csv", "json". Throws std::invalid_argument.
ReportFormat ParseReportFormat(std::string_view name);

struct RenderOptions {
  // Wall-clock fields vary between runs; drop them to compare reports.
  bool include_timing = true;
  // JSON only: per-example audit records.
  bool include_records = true;
};

class ReportIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rows render as: Dataset | Model | Size | Pert. Rate | ASR (%) |
// Avg. Time (s) | Avg. Query. Throws std::invalid_argument on a report with
// no rows.
std::string RenderReport(const BenchmarkReport& report, ReportFormat format,
                         const RenderOptions& options = {});

// Renders and writes to `path`; throws ReportIoError when it cannot.
void EmitReport(const BenchmarkReport& report, ReportFormat format,
                const std::string& path, const RenderOptions& options = {});

}  // namespace emoji_attack

#endif  // EMOJI_ATTACK_REPORT_H_
