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

#include "emoji_attack/attack.h"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "emoji_attack/sentiment.h"

namespace emoji_attack {
namespace {

bool IsSurfaceConcatenation(std::string_view bytes,
                            const EmojiLexicon& lexicon) {
  // reachable[i]: bytes[0, i) splits into lexicon surfaces.
  std::vector<char> reachable(bytes.size() + 1, 0);
  reachable[0] = 1;
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    if (!reachable[i]) continue;
    for (const EmojiToken& token : lexicon.tokens()) {
      const std::string& s = token.surface;
      if (bytes.compare(i, s.size(), s) == 0) reachable[i + s.size()] = 1;
    }
  }
  return reachable[bytes.size()] != 0;
}

std::vector<std::string_view> SplitWhitespace(std::string_view text) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    if (i > start) words.push_back(text.substr(start, i - start));
  }
  return words;
}

std::size_t LongestCommonSubsequence(const std::vector<std::string_view>& a,
                                     const std::vector<std::string_view>& b) {
  std::vector<std::size_t> row(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = 0;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = a[i - 1] == b[j - 1] ? diag + 1 : std::max(row[j], row[j - 1]);
      diag = up;
    }
  }
  return row[b.size()];
}

}  // namespace

void AttackConfig::Validate() const {
  if (top_k < 1) throw std::invalid_argument("top_k must be >= 1");
  if (!(alpha_stealth >= 0.0 && alpha_stealth <= 1.0)) {
    throw std::invalid_argument("alpha_stealth must lie in [0, 1]");
  }
  space.Validate();
}

std::string ConcatAdversarial(const EmojiSequence& prefix,
                              std::string_view text,
                              const EmojiSequence& suffix,
                              const EmojiLexicon& lexicon) {
  if (text.empty()) throw std::invalid_argument("cannot attack empty text");
  std::string out = JoinSurfaces(prefix, lexicon);
  out.append(text);
  out += JoinSurfaces(suffix, lexicon);
  return out;
}

double AdversarialLoss(const ProbabilityMap& probs, std::string_view y) {
  if (probs.size() < 2) {
    throw std::invalid_argument("adversarial loss needs at least two labels");
  }
  const auto it = probs.find(y);
  if (it == probs.end()) {
    throw std::invalid_argument("label '" + std::string(y) +
                                "' missing from probabilities");
  }
  const double* best = nullptr;
  for (const auto& [label, p] : probs) {
    if (label == y) continue;
    if (best == nullptr || p > *best) best = &p;
  }
  return std::log(std::max(*best, kProbabilityFloor)) -
         std::log(std::max(it->second, kProbabilityFloor));
}

double LengthPenalty(int length, const SequenceSpaceConfig& space) {
  if (length < 0) throw std::invalid_argument("length must be >= 0");
  if (space.l_max == space.l_min) return length <= space.l_min ? 1.0 : 0.0;
  const double ratio = static_cast<double>(length - space.l_min) /
                       static_cast<double>(space.l_max - space.l_min);
  return std::clamp(1.0 - ratio, 0.0, 1.0);
}

int SentimentConsistency(Sentiment text_sentiment, const EmojiSequence& prefix,
                         const EmojiSequence& suffix,
                         const EmojiLexicon& lexicon) {
  if (prefix.empty() || suffix.empty()) return 0;
  return SentimentOfSequence(prefix, lexicon) == text_sentiment &&
                 SentimentOfSequence(suffix, lexicon) == text_sentiment
             ? 1
             : 0;
}

double Stealthiness(Sentiment text_sentiment, const CandidatePair& pair,
                    const AttackConfig& cfg, const EmojiLexicon& lexicon) {
  const double delta =
      SentimentConsistency(text_sentiment, pair.prefix, pair.suffix, lexicon);
  const SequenceSpaceConfig combined{2 * cfg.space.l_min, 2 * cfg.space.l_max};
  const double gamma =
      LengthPenalty(static_cast<int>(pair.total_length()), combined);
  return cfg.alpha_stealth * delta + (1.0 - cfg.alpha_stealth) * gamma;
}

double PerturbationRate(std::string_view text, std::string_view adversarial,
                        const EmojiLexicon& lexicon) {
  if (!text.empty()) {
    for (std::size_t pos = adversarial.find(text); pos != std::string_view::npos;
         pos = adversarial.find(text, pos + 1)) {
      if (IsSurfaceConcatenation(adversarial.substr(0, pos), lexicon) &&
          IsSurfaceConcatenation(adversarial.substr(pos + text.size()),
                                 lexicon)) {
        return 0.0;
      }
    }
  }
  const std::vector<std::string_view> original = SplitWhitespace(text);
  if (original.empty()) return 1.0;
  const double n = static_cast<double>(original.size());
  const double kept = static_cast<double>(
      LongestCommonSubsequence(original, SplitWhitespace(adversarial)));
  // Some byte changed even if every word survived.
  return std::clamp(std::max(1.0 - kept / n, 1.0 / n), 0.0, 1.0);
}

std::vector<CandidatePair> FilterConsistent(
    std::span<const CandidatePair> candidates, Sentiment text_sentiment,
    const EmojiLexicon& lexicon) {
  std::vector<CandidatePair> kept;
  for (const CandidatePair& pair : candidates) {
    if (SentimentConsistency(text_sentiment, pair.prefix, pair.suffix,
                             lexicon) == 1) {
      kept.push_back(pair);
    }
  }
  return kept;
}

AttackResult Attack(const AttackTarget& target,
                    std::span<const CandidatePair> candidates, Oracle& oracle,
                    const AttackConfig& cfg, const EmojiLexicon& lexicon) {
  cfg.Validate();
  if (target.text.empty()) throw std::invalid_argument("cannot attack empty text");
  if (candidates.empty()) throw std::invalid_argument("empty candidate list");

  const auto start = std::chrono::steady_clock::now();
  const bool hard = cfg.hard_label_mode || oracle.hard_label();
  const std::size_t budget =
      std::min(static_cast<std::size_t>(cfg.top_k), candidates.size());

  AttackResult result;
  result.original_label = target.label;
  std::optional<std::size_t> best;
  double best_loss = 0.0;

  for (std::size_t i = 0; i < budget; ++i) {
    const CandidatePair& pair = candidates[i];
    std::string adversarial =
        ConcatAdversarial(pair.prefix, target.text, pair.suffix, lexicon);
    Prediction prediction;
    try {
      ++result.queries;
      prediction = oracle.Classify(adversarial);
    } catch (const AbstentionError& e) {
      if (!cfg.abstention_as_no_flip) throw AttackError(e.what(), result.queries);
      if (hard || !best || best_loss < -1.0) {
        best = i;
        best_loss = -1.0;
      }
      continue;
    } catch (const OracleError& e) {
      throw AttackError(e.what(), result.queries);
    }

    const bool flipped = prediction.label != target.label;
    double loss = flipped ? 1.0 : -1.0;
    if (!hard && prediction.probs && prediction.probs->size() >= 2 &&
        prediction.probs->contains(target.label)) {
      loss = AdversarialLoss(*prediction.probs, target.label);
    }
    if (flipped) {
      result.success = true;
      result.adversarial_text = std::move(adversarial);
      result.pair = pair;
      result.loss = loss;
      result.flipped_label = prediction.label;
      break;
    }
    if (hard || !best || loss > best_loss) {
      best = i;
      best_loss = loss;
    }
  }

  if (!result.success && best) {
    result.pair = candidates[*best];
    result.loss = best_loss;
  }
  if (result.pair) {
    result.stealth = Stealthiness(target.sentiment, *result.pair, cfg, lexicon);
  }
  result.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - start);
  return result;
}

}  // namespace emoji_attack
