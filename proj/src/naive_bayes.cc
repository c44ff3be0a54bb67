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

#include "emoji_attack/naive_bayes.h"

#include <unicode/uchar.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "emoji_attack/unicode.h"

namespace emoji_attack {

std::vector<std::string> ExtractFeatures(std::string_view text,
                                         const EmojiLexicon& lexicon) {
  const std::string normalized = unicode::NormalizeNfc(text);
  const std::vector<TokenMatch> matches = ParseEmojiTokens(normalized, lexicon);

  std::vector<std::string> features;
  std::string word;
  const auto flush = [&] {
    if (!word.empty()) features.push_back(std::move(word));
    word.clear();
  };
  const auto scan_words = [&](std::string_view span) {
    for (char32_t cp : unicode::DecodeUtf8(span)) {
      if (u_isalnum(static_cast<UChar32>(cp)) || cp == U'\'') {
        unicode::AppendUtf8(
            static_cast<char32_t>(u_tolower(static_cast<UChar32>(cp))), word);
      } else {
        flush();
      }
    }
    flush();
  };

  std::size_t pos = 0;
  for (const TokenMatch& m : matches) {
    scan_words(std::string_view(normalized).substr(pos, m.offset - pos));
    const std::string& surface = lexicon.token(m.id).surface;
    features.push_back("emoji:" + surface);
    pos = m.offset + surface.size();
  }
  scan_words(std::string_view(normalized).substr(pos));
  return features;
}

NaiveBayesClassifier::NaiveBayesClassifier(
    NaiveBayesClassifier&& other) noexcept
    : lexicon_(other.lexicon_),
      labels_(std::move(other.labels_)),
      log_prior_(std::move(other.log_prior_)),
      vocab_(std::move(other.vocab_)),
      log_likelihood_(std::move(other.log_likelihood_)) {}

NaiveBayesClassifier NaiveBayesClassifier::Train(
    const std::vector<LabeledText>& corpus, const EmojiLexicon& lexicon) {
  std::set<std::string> label_set;
  for (const LabeledText& doc : corpus) label_set.insert(doc.label);
  if (label_set.size() < 2) {
    throw std::invalid_argument(
        "naive bayes needs at least two distinct labels");
  }

  NaiveBayesClassifier model(lexicon);
  model.labels_.assign(label_set.begin(), label_set.end());
  const std::size_t num_labels = model.labels_.size();
  std::map<std::string, std::size_t> label_index;
  for (std::size_t i = 0; i < num_labels; ++i) {
    label_index[model.labels_[i]] = i;
  }

  // Features are indexed in sorted order so training is order-independent.
  std::vector<std::size_t> doc_count(num_labels, 0);
  std::map<std::string, std::vector<double>> counts;
  std::vector<double> total(num_labels, 0.0);
  for (const LabeledText& doc : corpus) {
    const std::size_t li = label_index.at(doc.label);
    ++doc_count[li];
    for (std::string& f : ExtractFeatures(doc.text, lexicon)) {
      auto& row = counts[std::move(f)];
      row.resize(num_labels, 0.0);
      row[li] += 1.0;
      total[li] += 1.0;
    }
  }

  const double vocab_size = static_cast<double>(counts.size());
  model.log_prior_.resize(num_labels);
  for (std::size_t li = 0; li < num_labels; ++li) {
    model.log_prior_[li] = std::log(static_cast<double>(doc_count[li]) /
                                    static_cast<double>(corpus.size()));
  }
  model.log_likelihood_.reserve(counts.size() * num_labels);
  for (const auto& [feature, row] : counts) {
    model.vocab_.emplace(feature, model.vocab_.size());
    for (std::size_t li = 0; li < num_labels; ++li) {
      model.log_likelihood_.push_back(
          std::log((row[li] + 1.0) / (total[li] + vocab_size)));
    }
  }
  return model;
}

std::vector<double> NaiveBayesClassifier::LogJoint(std::string_view text) const {
  std::vector<double> scores = log_prior_;
  const std::size_t num_labels = labels_.size();
  for (const std::string& f : ExtractFeatures(text, *lexicon_)) {
    const auto it = vocab_.find(f);
    if (it == vocab_.end()) continue;
    const double* row = &log_likelihood_[it->second * num_labels];
    for (std::size_t li = 0; li < num_labels; ++li) scores[li] += row[li];
  }
  return scores;
}

Prediction NaiveBayesClassifier::DoClassify(std::string_view text) {
  const std::vector<double> scores = LogJoint(text);
  const double max = *std::max_element(scores.begin(), scores.end());
  double norm = 0.0;
  for (double s : scores) norm += std::exp(s - max);

  Prediction prediction;
  ProbabilityMap probs;
  for (std::size_t li = 0; li < labels_.size(); ++li) {
    probs.emplace(labels_[li], std::exp(scores[li] - max) / norm);
  }
  prediction.label = ArgmaxLabel(probs);
  prediction.probs = std::move(probs);
  return prediction;
}

}  // namespace emoji_attack
