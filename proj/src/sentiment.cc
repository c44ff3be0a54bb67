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

#include "emoji_attack/sentiment.h"

#include <array>

#include "json.hpp"

namespace emoji_attack {

Sentiment SentimentOfSequence(const EmojiSequence& seq,
                              const EmojiLexicon& lexicon) {
  if (seq.empty()) {
    throw std::invalid_argument("sentiment of an empty emoji sequence");
  }
  std::array<std::size_t, 3> counts{};
  for (TokenId id : seq.tokens) {
    ++counts[static_cast<std::size_t>(lexicon.token(id).sentiment)];
  }
  for (Sentiment s : kAllSentiments) {
    if (2 * counts[static_cast<std::size_t>(s)] > seq.size()) return s;
  }
  return Sentiment::kNeutral;
}

LabelSentimentMap LabelSentimentMap::Identity() {
  return LabelSentimentMap({{"positive", Sentiment::kPositive},
                            {"negative", Sentiment::kNegative},
                            {"neutral", Sentiment::kNeutral}});
}

LabelSentimentMap LabelSentimentMap::GoEmotions() {
  std::map<std::string, Sentiment, std::less<>> map;
  for (const char* label :
       {"admiration", "amusement", "approval", "caring", "desire",
        "excitement", "gratitude", "joy", "love", "optimism", "pride",
        "relief"}) {
    map.emplace(label, Sentiment::kPositive);
  }
  for (const char* label :
       {"anger", "annoyance", "disappointment", "disapproval", "disgust",
        "embarrassment", "fear", "grief", "nervousness", "remorse",
        "sadness"}) {
    map.emplace(label, Sentiment::kNegative);
  }
  for (const char* label :
       {"confusion", "curiosity", "realization", "surprise", "neutral"}) {
    map.emplace(label, Sentiment::kNeutral);
  }
  return LabelSentimentMap(std::move(map));
}

LabelSentimentMap LabelSentimentMap::FromJson(std::string_view content) {
  const nlohmann::json doc = nlohmann::json::parse(content);
  if (!doc.is_object()) {
    throw std::invalid_argument("label map must be a JSON object");
  }
  std::map<std::string, Sentiment, std::less<>> map;
  for (const auto& [label, value] : doc.items()) {
    if (!value.is_string()) {
      throw std::invalid_argument("label map value for '" + label +
                                  "' must be a string");
    }
    map.emplace(label, ParseSentiment(value.get<std::string>()));
  }
  return LabelSentimentMap(std::move(map));
}

Sentiment LabelSentimentMap::Coarsen(std::string_view label) const {
  const auto it = map_.find(label);
  if (it == map_.end()) {
    throw UnmappedLabelError("label '" + std::string(label) +
                             "' has no sentiment mapping");
  }
  return it->second;
}

}  // namespace emoji_attack
