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

#ifndef EMOJI_ATTACK_DATASET_H_
#define EMOJI_ATTACK_DATASET_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace emoji_attack {

struct Example {
  std::string id;
  std::string text;
  std::string label;
};

struct Dataset {
  std::string name;
  std::vector<Example> examples;
  std::vector<std::string> labels;  // distinct, ascending
};

// Lists every offending line, not just the first.
class DatasetError : public std::runtime_error {
 public:
  DatasetError(const std::string& what, std::vector<std::size_t> lines)
      : std::runtime_error(what), lines_(std::move(lines)) {}
  const std::vector<std::size_t>& lines() const { return lines_; }

 private:
  std::vector<std::size_t> lines_;
};

// JSON Lines, one {"id": ..., "text": ..., "label": ...} per line. Ids may be
// strings or integers and must be unique; text must be non-empty valid UTF-8.
// Blank lines are ignored.
Dataset ParseDataset(std::string_view content, std::string name);
// Dataset name is the file stem.
Dataset LoadDataset(const std::string& path);

std::string SerializeDataset(const Dataset& dataset);

}  // namespace emoji_attack

#endif  // EMOJI_ATTACK_DATASET_H_
