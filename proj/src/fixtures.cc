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

#include "emoji_attack/fixtures.h"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "emoji_attack/policy.h"
#include "json.hpp"

namespace emoji_attack {
namespace {

using Pool = std::vector<std::string_view>;

struct ClassSpec {
  Sentiment sentiment;
  Pool templates;  // {t} topic, {w} sentiment word
  Pool words;
  Pool loyal_emoji;  // tagged with this class
  Pool cross_emoji;  // tagged otherwise, used with this class in practice
};

const Pool kTopics = {"movie", "concert", "dinner", "trip",    "game",
                      "book",  "show",    "meeting", "update", "weekend",
                      "class", "flight",  "party",  "album",   "season"};

const std::array<ClassSpec, 3>& Classes() {
  static const std::array<ClassSpec, 3> classes = {{
      {Sentiment::kPositive,
       {"the {t} was {w}", "such a {w} {t}", "honestly that {t} was {w}",
        "i think the {t} is {w}", "{w} {t} tonight"},
       {"great", "wonderful", "amazing", "lovely", "fantastic", "brilliant",
        "delightful", "superb", "awesome", "charming", "excellent", "fun"},
       {"😍", "🥰", "🎉", "❤️", "😊"},
       {"😭", "💀", "🥺", "👀"}},
      {Sentiment::kNegative,
       {"the {t} was {w}", "such a {w} {t}", "honestly that {t} was {w}",
        "i think the {t} is {w}", "{w} {t} tonight"},
       {"terrible", "awful", "horrible", "boring", "dreadful",
        "disappointing", "miserable", "annoying", "painful", "broken",
        "useless", "bland"},
       {"😡", "💔", "😞", "😢"},
       {"😂", "👍", "🤔", "🙃"}},
      {Sentiment::kNeutral,
       {"the {t} was {w} today", "the {t} is {w} for monday",
        "our {t} got {w} again", "note that the {t} was {w}",
        "the {t} has been {w}"},
       {"scheduled", "moved", "listed", "updated", "delivered", "posted",
        "printed", "planned", "filed", "reviewed", "booked", "announced"},
       {"📅", "💼", "☕", "📌"},
       {"🙂", "👌", "😩"}},
  }};
  return classes;
}

std::size_t Pick(std::mt19937_64& rng, std::size_t n) {
  const auto i = static_cast<std::size_t>(UniformUnit(rng) * n);
  return i < n ? i : n - 1;
}

std::string Fill(std::string_view pattern, std::string_view topic,
                 std::string_view word) {
  std::string out;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (pattern.compare(i, 3, "{t}") == 0) {
      out += topic;
      i += 2;
    } else if (pattern.compare(i, 3, "{w}") == 0) {
      out += word;
      i += 2;
    } else {
      out += pattern[i];
    }
  }
  return out;
}

void RequireSurface(const EmojiLexicon& lexicon, std::string_view surface) {
  if (!lexicon.Find(surface)) {
    throw std::invalid_argument("fixture emoji '" + std::string(surface) +
                                "' missing from lexicon");
  }
}

}  // namespace

Dataset GenerateFixtureDataset(const EmojiLexicon& lexicon, std::uint64_t seed,
                               std::size_t size) {
  for (const ClassSpec& spec : Classes()) {
    for (std::string_view s : spec.loyal_emoji) RequireSurface(lexicon, s);
    for (std::string_view s : spec.cross_emoji) RequireSurface(lexicon, s);
  }
  std::mt19937_64 rng(seed);
  Dataset dataset;
  dataset.name = "fixture";
  for (std::size_t i = 0; i < size; ++i) {
    const ClassSpec& spec = Classes()[i % 3];
    std::string text =
        Fill(spec.templates[Pick(rng, spec.templates.size())],
             kTopics[Pick(rng, kTopics.size())],
             spec.words[Pick(rng, spec.words.size())]);
    const double u = UniformUnit(rng);
    if (u < 0.5) {
      text += ' ';
      text += spec.cross_emoji[Pick(rng, spec.cross_emoji.size())];
    } else if (u < 0.85) {
      text += ' ';
      text += spec.loyal_emoji[Pick(rng, spec.loyal_emoji.size())];
    }
    char id[32];
    std::snprintf(id, sizeof(id), "fx-%03zu", i);
    dataset.examples.push_back(
        {id, std::move(text), std::string(ToString(spec.sentiment))});
  }
  for (Sentiment s : kAllSentiments) {
    dataset.labels.emplace_back(ToString(s));
  }
  std::sort(dataset.labels.begin(), dataset.labels.end());
  return dataset;
}

std::vector<SupervisedExample> GeneratePretrainCorpus(
    const Dataset& dataset, const EmojiLexicon& lexicon,
    const SequenceSpaceConfig& space, std::uint64_t seed,
    std::size_t per_example) {
  space.Validate();
  std::mt19937_64 rng(seed ^ 0x5bd1e995ULL);
  std::vector<SupervisedExample> corpus;
  for (const Example& ex : dataset.examples) {
    const Sentiment sentiment = ParseSentiment(ex.label);
    const std::vector<TokenId>& pool = lexicon.Subspace(sentiment);
    for (Role role : {Role::kPrefix, Role::kSuffix}) {
      for (std::size_t r = 0; r < per_example; ++r) {
        const int len = space.l_min +
                        static_cast<int>(Pick(rng, space.num_lengths()));
        SupervisedExample sample{sentiment, role, {}};
        for (int t = 0; t < len; ++t) {
          sample.sequence.tokens.push_back(pool[Pick(rng, pool.size())]);
        }
        corpus.push_back(std::move(sample));
      }
    }
  }
  return corpus;
}

std::string SerializePretrainCorpus(std::span<const SupervisedExample> corpus,
                                    const EmojiLexicon& lexicon) {
  std::string out;
  for (const SupervisedExample& ex : corpus) {
    nlohmann::json seq = nlohmann::json::array();
    for (TokenId id : ex.sequence.tokens) seq.push_back(lexicon.token(id).surface);
    out += nlohmann::json{{"sentiment", ToString(ex.sentiment)},
                          {"role", ToString(ex.role)},
                          {"sequence", seq}}
               .dump();
    out += '\n';
  }
  return out;
}

std::vector<SupervisedExample> ParsePretrainCorpus(std::string_view content,
                                                   const EmojiLexicon& lexicon) {
  std::vector<SupervisedExample> corpus;
  std::istringstream in{std::string(content)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "pretrain line " + std::to_string(line_no) + ": ";
    try {
      const nlohmann::json record = nlohmann::json::parse(line);
      SupervisedExample ex;
      ex.sentiment = ParseSentiment(record.at("sentiment").get<std::string>());
      const std::string role = record.at("role").get<std::string>();
      if (role == "prefix") {
        ex.role = Role::kPrefix;
      } else if (role == "suffix") {
        ex.role = Role::kSuffix;
      } else {
        throw std::invalid_argument("unknown role '" + role + "'");
      }
      for (const auto& surface : record.at("sequence")) {
        const auto id = lexicon.Find(surface.get<std::string>());
        if (!id) {
          throw std::invalid_argument("emoji '" + surface.get<std::string>() +
                                      "' not in lexicon");
        }
        ex.sequence.tokens.push_back(*id);
      }
      if (ex.sequence.tokens.empty()) {
        throw std::invalid_argument("empty sequence");
      }
      corpus.push_back(std::move(ex));
    } catch (const std::exception& e) {
      throw std::invalid_argument(where + e.what());
    }
  }
  return corpus;
}

std::vector<SupervisedExample> LoadPretrainCorpus(const std::string& path,
                                                  const EmojiLexicon& lexicon) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParsePretrainCorpus(buf.str(), lexicon);
}

}  // namespace emoji_attack
