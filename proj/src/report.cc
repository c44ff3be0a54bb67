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

#include "emoji_attack/report.h"

#include <cstdio>
#include <fstream>

#include "json.hpp"

namespace emoji_attack {
namespace {

std::string Fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
  return buf;
}

// Pert. Rate is printed the way Table 1 prints it.
std::string PertRate(double value) {
  return value == 0.0 ? "0" : Fixed(value, 4);
}

std::string Size(int top_k) { return "top" + std::to_string(top_k); }

std::string CsvField(const std::string& value) {
  if (value.find_first_of(",\"\n\r") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string MarkdownCell(const std::string& value) {
  std::string out;
  for (char c : value) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

std::string RenderMarkdown(const BenchmarkReport& report,
                           const RenderOptions& options) {
  std::string out;
  if (options.include_timing) {
    out += "| Dataset | Model | Size | Pert. Rate | ASR (%) | Avg. Time (s) | "
           "Avg. Query |\n";
    out += "|---|---|---|---|---|---|---|\n";
  } else {
    out += "| Dataset | Model | Size | Pert. Rate | ASR (%) | Avg. Query |\n";
    out += "|---|---|---|---|---|---|\n";
  }
  for (const ReportRow& row : report.rows) {
    out += "| " + MarkdownCell(row.dataset) + " | " + MarkdownCell(row.model) +
           " | " + Size(row.top_k) + " | " + PertRate(row.pert_rate) + " | " +
           Fixed(row.asr_percent, 2) + " | ";
    if (options.include_timing) out += Fixed(row.avg_time_seconds, 4) + " | ";
    out += Fixed(row.avg_queries, 2) + " |\n";
  }
  if (!report.complete) {
    out += "\nIncomplete run: " + report.error + "\n";
  }
  if (options.include_timing && report.timing_concurrent) {
    out += "\nTimes measured with concurrent jobs.\n";
  }
  return out;
}

std::string RenderCsv(const BenchmarkReport& report,
                      const RenderOptions& options) {
  std::string out = "dataset,model,size,pert_rate,asr_percent,";
  if (options.include_timing) out += "avg_time_seconds,";
  out += "avg_queries\n";
  for (const ReportRow& row : report.rows) {
    out += CsvField(row.dataset) + "," + CsvField(row.model) + "," +
           Size(row.top_k) + "," + PertRate(row.pert_rate) + "," +
           Fixed(row.asr_percent, 2) + ",";
    if (options.include_timing) out += Fixed(row.avg_time_seconds, 4) + ",";
    out += Fixed(row.avg_queries, 2) + "\n";
  }
  return out;
}

template <typename T>
nlohmann::ordered_json Optional(const std::optional<T>& value) {
  return value ? nlohmann::ordered_json(*value) : nlohmann::ordered_json();
}

std::string RenderJson(const BenchmarkReport& report,
                       const RenderOptions& options) {
  nlohmann::ordered_json doc;
  doc["complete"] = report.complete;
  if (!report.complete) doc["error"] = report.error;
  doc["candidate_source"] = report.candidate_source;
  if (options.include_timing) doc["timing_concurrent"] = report.timing_concurrent;
  doc["examples"] = report.examples;
  doc["skipped"] = report.skipped;
  doc["baseline_queries"] = report.baseline_queries;
  doc["attack_queries"] = report.attack_queries;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const ReportRow& row : report.rows) {
    nlohmann::ordered_json r;
    r["dataset"] = row.dataset;
    r["model"] = row.model;
    r["size"] = Size(row.top_k);
    r["pert_rate"] = PertRate(row.pert_rate);
    r["asr_percent"] = Fixed(row.asr_percent, 2);
    if (options.include_timing) {
      r["avg_time_seconds"] = Fixed(row.avg_time_seconds, 4);
    }
    r["avg_queries"] = Fixed(row.avg_queries, 2);
    r["attacked"] = row.attacked;
    r["successes"] = row.successes;
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  if (options.include_records) {
    nlohmann::ordered_json records = nlohmann::ordered_json::array();
    for (const ExampleRecord& rec : report.records) {
      nlohmann::ordered_json r;
      r["id"] = rec.id;
      if (rec.skipped) {
        r["skipped"] = true;
        r["baseline_label"] = rec.baseline_label;
        records.push_back(std::move(r));
        continue;
      }
      r["top_k"] = rec.top_k;
      r["success"] = rec.success;
      r["queries"] = rec.queries;
      if (options.include_timing) r["seconds"] = rec.seconds;
      r["pert_rate"] = rec.pert_rate;
      r["prefix"] = Optional(rec.prefix);
      r["suffix"] = Optional(rec.suffix);
      r["adversarial_text"] = Optional(rec.adversarial_text);
      r["original_label"] = rec.baseline_label;
      r["flipped_label"] = Optional(rec.flipped_label);
      r["loss"] = Optional(rec.loss);
      r["stealth"] = Optional(rec.stealth);
      records.push_back(std::move(r));
    }
    doc["records"] = std::move(records);
  }
  return doc.dump(2) + "\n";
}

}  // namespace

ReportFormat ParseReportFormat(std::string_view name) {
  if (name == "markdown" || name == "md") return ReportFormat::kMarkdown;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  throw std::invalid_argument("unknown report format '" + std::string(name) +
                              "'");
}

std::string RenderReport(const BenchmarkReport& report, ReportFormat format,
                         const RenderOptions& options) {
  if (report.rows.empty()) {
    throw std::invalid_argument("cannot render an empty report");
  }
  switch (format) {
    case ReportFormat::kMarkdown:
      return RenderMarkdown(report, options);
    case ReportFormat::kCsv:
      return RenderCsv(report, options);
    case ReportFormat::kJson:
      return RenderJson(report, options);
  }
  throw std::invalid_argument("unknown report format");
}

void EmitReport(const BenchmarkReport& report, ReportFormat format,
                const std::string& path, const RenderOptions& options) {
  const std::string body = RenderReport(report, format, options);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ReportIoError("cannot open '" + path + "' for writing");
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  out.flush();
  if (!out) throw ReportIoError("failed writing '" + path + "'");
}

}  // namespace emoji_attack
