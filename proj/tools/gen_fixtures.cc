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

// Regenerates data/fixture.jsonl and data/pretrain.jsonl from the lexicon.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "emoji_attack/dataset.h"
#include "emoji_attack/fixtures.h"
#include "emoji_attack/lexicon.h"

namespace {

void WriteFile(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << body;
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regenerate the bundled fixture dataset and pretraining corpus"};
  std::string lexicon_path = "data/lexicon.jsonl";
  std::string out_dir = "data";
  std::uint64_t seed = emoji_attack::kFixtureSeed;
  app.add_option("--lexicon", lexicon_path, "Emoji lexicon (JSONL)");
  app.add_option("--out-dir", out_dir, "Output directory");
  app.add_option("--seed", seed, "Generator seed");
  CLI11_PARSE(app, argc, argv);

  try {
    const auto lexicon = emoji_attack::LoadLexiconFile(lexicon_path);
    const auto dataset =
        emoji_attack::GenerateFixtureDataset(lexicon, seed);
    const auto corpus = emoji_attack::GeneratePretrainCorpus(
        dataset, lexicon, emoji_attack::SequenceSpaceConfig{}, seed);
    WriteFile(out_dir + "/fixture.jsonl",
              emoji_attack::SerializeDataset(dataset));
    WriteFile(out_dir + "/pretrain.jsonl",
              emoji_attack::SerializePretrainCorpus(corpus, lexicon));
    std::cout << dataset.examples.size() << " examples, " << corpus.size()
              << " pretraining sequences\n";
  } catch (const std::exception& e) {
    std::cerr << "gen_fixtures: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
