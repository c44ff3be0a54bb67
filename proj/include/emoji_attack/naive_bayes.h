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

#ifndef EMOJI_ATTACK_NAIVE_BAYES_H_
#define EMOJI_ATTACK_NAIVE_BAYES_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "emoji_attack/lexicon.h"
#include "emoji_attack/oracle.h"

namespace emoji_attack {

struct LabeledText {
  std::string text;
  std::string label;
};

// Unigram features: lower-cased words plus one "emoji:<surface>" feature per
// lexicon match. Emoji bytes never leak into word features.
std::vector<std::string> ExtractFeatures(std::string_view text,
                                         const EmojiLexicon& lexicon);

// Multinomial naive Bayes with add-one smoothing. Stateless after training, so
// concurrent Classify calls are safe; outputs are bit-reproducible.
class NaiveBayesClassifier : public Oracle {
 public:
  // Throws std::invalid_argument with fewer than two distinct labels.
  static NaiveBayesClassifier Train(const std::vector<LabeledText>& corpus,
                                    const EmojiLexicon& lexicon);

  NaiveBayesClassifier(NaiveBayesClassifier&& other) noexcept;

  std::string name() const override { return "naive-bayes"; }

  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t vocabulary_size() const { return vocab_.size(); }

  // Per-label log posterior up to the shared normalizer.
  std::vector<double> LogJoint(std::string_view text) const;

 protected:
  Prediction DoClassify(std::string_view text) override;

 private:
  NaiveBayesClassifier(const EmojiLexicon& lexicon) : lexicon_(&lexicon) {}

  const EmojiLexicon* lexicon_;
  std::vector<std::string> labels_;  // ascending
  std::vector<double> log_prior_;
  std::unordered_map<std::string, std::size_t> vocab_;
  // log P(feature | label), row-major [feature][label].
  std::vector<double> log_likelihood_;
};

}  // namespace emoji_attack

#endif  // EMOJI_ATTACK_NAIVE_BAYES_H_
