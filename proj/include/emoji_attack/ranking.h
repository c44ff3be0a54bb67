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

#ifndef EMOJI_ATTACK_RANKING_H_
#define EMOJI_ATTACK_RANKING_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "emoji_attack/attack.h"
#include "emoji_attack/lexicon.h"
#include "emoji_attack/policy.h"

namespace emoji_attack {

struct ScoredSequence {
  EmojiSequence sequence;
  double log_prob = 0.0;
};

// The k most probable sequences for one role over the lengths of the policy's
// space, using only `alphabet` tokens. Ordered by log-probability descending,
// ties by ascending token ids. Exact: best-first expansion never discards a
// prefix that could still reach the top k.
std::vector<ScoredSequence> TopSequences(const Policy& policy,
                                         Sentiment sentiment, Role role,
                                         std::span<const TokenId> alphabet,
                                         std::size_t k);

struct RankedCandidates {
  std::vector<CandidatePair> pairs;
  // Fewer than k pairs exist under the space bounds; `pairs` holds all.
  bool exhausted = false;
};

// The k best (prefix, suffix) pairs by joint log-probability, ties broken by
// (prefix ids, suffix ids) ascending, so the top-k list is a prefix of the
// top-k' list for k <= k'. With cfg.require_consistency only tokens of the
// text's sentiment are expanded. Throws std::invalid_argument on k < 1.
RankedCandidates RankCandidates(const Policy& policy, Sentiment sentiment,
                                std::size_t k, const AttackConfig& cfg,
                                const EmojiLexicon& lexicon);

// Produces ordered candidate lists for a target. Implementations are
// deterministic in (target, k, seed) and nested in k.
class CandidateSource {
 public:
  virtual ~CandidateSource() = default;
  virtual RankedCandidates Rank(const AttackTarget& target, std::size_t k,
                                std::uint64_t seed) const = 0;
  virtual std::string name() const = 0;
};

class PolicyRanker : public CandidateSource {
 public:
  // Throws std::invalid_argument when the policy alphabet or space disagrees
  // with the lexicon or config.
  PolicyRanker(const Policy& policy, const EmojiLexicon& lexicon,
               AttackConfig cfg);

  RankedCandidates Rank(const AttackTarget& target, std::size_t k,
                        std::uint64_t seed) const override;
  std::string name() const override { return "policy"; }

 private:
  const Policy& policy_;
  const EmojiLexicon& lexicon_;
  AttackConfig cfg_;
};

// Uniform-random ordering of the same candidate space: each side draws a
// uniform length and then uniform tokens; duplicates are redrawn.
class RandomRanker : public CandidateSource {
 public:
  RandomRanker(const EmojiLexicon& lexicon, AttackConfig cfg);

  RankedCandidates Rank(const AttackTarget& target, std::size_t k,
                        std::uint64_t seed) const override;
  std::string name() const override { return "random"; }

 private:
  const EmojiLexicon& lexicon_;
  AttackConfig cfg_;
};

}  // namespace emoji_attack

#endif  // EMOJI_ATTACK_RANKING_H_
