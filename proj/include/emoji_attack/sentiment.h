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

#ifndef EMOJI_ATTACK_SENTIMENT_H_
#define EMOJI_ATTACK_SENTIMENT_H_

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "emoji_attack/lexicon.h"
#include "emoji_attack/sequence_space.h"

namespace emoji_attack {

// f_sen over emoji sequences: strict majority of the token tags, neutral when
// no tag holds a strict majority. Throws std::invalid_argument when empty.
Sentiment SentimentOfSequence(const EmojiSequence& seq,
                              const EmojiLexicon& lexicon);

class UnmappedLabelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Task label -> coarse sentiment, bridging multi-class datasets to the
// three-way consistency constraint.
class LabelSentimentMap {
 public:
  LabelSentimentMap() = default;
  explicit LabelSentimentMap(std::map<std::string, Sentiment, std::less<>> map)
      : map_(std::move(map)) {}

  // positive/negative/neutral mapped to themselves.
  static LabelSentimentMap Identity();
  // GoEmotions' 27 emotions plus "neutral"; ambiguous emotions
  // (confusion, curiosity, realization, surprise) map to neutral.
  static LabelSentimentMap GoEmotions();
  // JSON object {"label": "positive"|"negative"|"neutral", ...}.
  static LabelSentimentMap FromJson(std::string_view content);

  // Throws UnmappedLabelError for labels outside the map.
  Sentiment Coarsen(std::string_view label) const;
  bool Covers(std::string_view label) const { return map_.contains(label); }
  const std::map<std::string, Sentiment, std::less<>>& entries() const {
    return map_;
  }

 private:
  std::map<std::string, Sentiment, std::less<>> map_;
};

}  // namespace emoji_attack

#endif  // EMOJI_ATTACK_SENTIMENT_H_
