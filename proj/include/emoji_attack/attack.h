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

#ifndef EMOJI_ATTACK_ATTACK_H_
#define EMOJI_ATTACK_ATTACK_H_

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "emoji_attack/lexicon.h"
#include "emoji_attack/oracle.h"
#include "emoji_attack/prediction.h"
#include "emoji_attack/sequence_space.h"

namespace emoji_attack {

struct AttackConfig {
  int top_k = 1;
  SequenceSpaceConfig space;
  double alpha_stealth = 0.5;
  bool require_consistency = true;
  // Treat every oracle as label-only even when it returns probabilities.
  bool hard_label_mode = false;
  // An abstaining hard-label oracle counts as "no flip" instead of an error.
  bool abstention_as_no_flip = true;

  // Throws std::invalid_argument on top_k < 1, alpha outside [0,1] or a bad
  // space.
  void Validate() const;
};

// Prefix s and suffix s' plus the ranking score that ordered them.
struct CandidatePair {
  EmojiSequence prefix;
  EmojiSequence suffix;
  double score = 0.0;

  std::size_t total_length() const { return prefix.size() + suffix.size(); }
  friend bool operator==(const CandidatePair& a, const CandidatePair& b) {
    return a.prefix == b.prefix && a.suffix == b.suffix;
  }
};

// The text under attack, its reference label and its coarse sentiment.
struct AttackTarget {
  std::string text;
  std::string label;
  Sentiment sentiment = Sentiment::kNeutral;
};

struct AttackResult {
  bool success = false;
  std::optional<std::string> adversarial_text;  // set on success
  std::optional<CandidatePair> pair;  // winning pair, or best seen on failure
  int queries = 0;
  std::chrono::nanoseconds elapsed{0};
  std::optional<double> loss;
  std::optional<double> stealth;
  std::string original_label;
  std::optional<std::string> flipped_label;
};

// An oracle failure in the middle of an attack.
class AttackError : public std::runtime_error {
 public:
  AttackError(const std::string& what, int queries)
      : std::runtime_error(what), queries_(queries) {}
  int queries() const { return queries_; }

 private:
  int queries_;
};

// cat(prefix) + text + cat(suffix). Throws std::invalid_argument on empty text.
std::string ConcatAdversarial(const EmojiSequence& prefix,
                              std::string_view text,
                              const EmojiSequence& suffix,
                              const EmojiLexicon& lexicon);

// log p(y_hat) - log p(y), y_hat the most probable label other than y (first
// in ascending label order on ties). Probabilities are clamped to >= 1e-12.
// Throws std::invalid_argument when y is missing or fewer than two labels.
double AdversarialLoss(const ProbabilityMap& probs, std::string_view y);

inline constexpr double kProbabilityFloor = 1e-12;

// max(0, 1 - (l - l_min) / (l_max - l_min)) clamped to [0,1]. With
// l_max == l_min: 1 for l <= l_min, else 0.
double LengthPenalty(int length, const SequenceSpaceConfig& space);

// 1 iff f_sen(prefix) == f_sen(suffix) == text_sentiment. Empty sequences have
// no sentiment and give 0.
int SentimentConsistency(Sentiment text_sentiment, const EmojiSequence& prefix,
                         const EmojiSequence& suffix,
                         const EmojiLexicon& lexicon);

// alpha * delta + (1 - alpha) * gamma(|s| + |s'|) with gamma evaluated on the
// combined bounds (2 l_min, 2 l_max).
double Stealthiness(Sentiment text_sentiment, const CandidatePair& pair,
                    const AttackConfig& cfg, const EmojiLexicon& lexicon);

// 0.0 iff `text` occurs byte-identically in `adversarial` and everything
// around that occurrence is a concatenation of lexicon surfaces. Otherwise a
// positive word-level diagnostic in (0, 1].
double PerturbationRate(std::string_view text, std::string_view adversarial,
                        const EmojiLexicon& lexicon);

// Drops pairs violating the consistency constraint; order is preserved.
std::vector<CandidatePair> FilterConsistent(
    std::span<const CandidatePair> candidates, Sentiment text_sentiment,
    const EmojiLexicon& lexicon);

// Queries candidates in rank order and stops at the first flip. At most
// cfg.top_k queries; candidates beyond top_k are ignored. Throws
// std::invalid_argument for an empty list and AttackError on oracle failure.
AttackResult Attack(const AttackTarget& target,
                    std::span<const CandidatePair> candidates, Oracle& oracle,
                    const AttackConfig& cfg, const EmojiLexicon& lexicon);

}  // namespace emoji_attack

#endif  // EMOJI_ATTACK_ATTACK_H_
