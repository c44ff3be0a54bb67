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

#include "emoji_attack/dataset.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "emoji_attack/unicode.h"
#include "json.hpp"

namespace emoji_attack {

Dataset ParseDataset(std::string_view content, std::string name) {
  Dataset dataset;
  dataset.name = std::move(name);
  std::istringstream in{std::string(content)};
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::size_t> bad_lines;
  std::vector<std::string> problems;
  std::unordered_map<std::string, std::size_t> id_line;
  std::set<std::string> labels;

  const auto reject = [&](std::size_t at, const std::string& why) {
    bad_lines.push_back(at);
    problems.push_back("line " + std::to_string(at) + ": " + why);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error&) {
      reject(line_no, "malformed JSON");
      continue;
    }
    if (!record.is_object()) {
      reject(line_no, "expected a JSON object");
      continue;
    }
    Example example;
    if (!record.contains("id") ||
        !(record["id"].is_string() || record["id"].is_number_integer())) {
      reject(line_no, "missing or non-string \"id\"");
      continue;
    }
    example.id = record["id"].is_string() ? record["id"].get<std::string>()
                                          : record["id"].dump();
    if (!record.contains("text") || !record["text"].is_string() ||
        record["text"].get<std::string>().empty()) {
      reject(line_no, "missing or empty \"text\"");
      continue;
    }
    example.text = record["text"].get<std::string>();
    if (!unicode::IsValidUtf8(example.text)) {
      reject(line_no, "\"text\" is not valid UTF-8");
      continue;
    }
    if (!record.contains("label") || !record["label"].is_string() ||
        record["label"].get<std::string>().empty()) {
      reject(line_no, "missing or empty \"label\"");
      continue;
    }
    example.label = record["label"].get<std::string>();
    if (const auto [it, inserted] = id_line.emplace(example.id, line_no);
        !inserted) {
      reject(line_no, "duplicate id '" + example.id + "' (first seen on line " +
                          std::to_string(it->second) + ")");
      continue;
    }
    labels.insert(example.label);
    dataset.examples.push_back(std::move(example));
  }

  if (!bad_lines.empty()) {
    std::string message = "dataset '" + dataset.name + "' has " +
                          std::to_string(bad_lines.size()) + " bad line(s):";
    for (const std::string& p : problems) message += "\n  " + p;
    throw DatasetError(message, std::move(bad_lines));
  }
  if (dataset.examples.empty()) {
    throw DatasetError("dataset '" + dataset.name + "' is empty", {});
  }
  dataset.labels.assign(labels.begin(), labels.end());
  return dataset;
}

Dataset LoadDataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetError("cannot open dataset '" + path + "'", {});
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseDataset(buf.str(), std::filesystem::path(path).stem().string());
}

std::string SerializeDataset(const Dataset& dataset) {
  std::string out;
  for (const Example& ex : dataset.examples) {
    out += nlohmann::json{{"id", ex.id}, {"text", ex.text}, {"label", ex.label}}
               .dump();
    out += '\n';
  }
  return out;
}

}  // namespace emoji_attack
