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

#include "emoji_attack/ranking.h"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace emoji_attack {
namespace {

struct Partial {
  double score;
  std::vector<TokenId> tokens;
};

// Max-heap order: higher score first, then lexicographically smaller tokens.
struct PartialLess {
  bool operator()(const Partial& a, const Partial& b) const {
    if (a.score != b.score) return a.score < b.score;
    return a.tokens > b.tokens;
  }
};

bool ScoredBefore(const ScoredSequence& a, const ScoredSequence& b) {
  if (a.log_prob != b.log_prob) return a.log_prob > b.log_prob;
  return a.sequence.tokens < b.sequence.tokens;
}

std::vector<TokenId> AllowedTokens(const AttackConfig& cfg,
                                   const EmojiLexicon& lexicon,
                                   Sentiment sentiment) {
  if (cfg.require_consistency) return lexicon.Subspace(sentiment);
  std::vector<TokenId> all(lexicon.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<TokenId>(i);
  return all;
}

// Number of sequences over `alphabet_size` tokens with lengths in the space,
// saturating at `cap`.
std::size_t CountSequences(std::size_t alphabet_size,
                           const SequenceSpaceConfig& space, std::size_t cap) {
  std::size_t total = 0;
  for (int l = space.l_min; l <= space.l_max; ++l) {
    std::size_t count = 1;
    for (int i = 0; i < l && count <= cap; ++i) count *= alphabet_size;
    total += std::min(count, cap);
    if (total >= cap) return cap;
  }
  return total;
}

}  // namespace

std::vector<ScoredSequence> TopSequences(const Policy& policy,
                                         Sentiment sentiment, Role role,
                                         std::span<const TokenId> alphabet,
                                         std::size_t k) {
  std::vector<ScoredSequence> complete;
  if (k == 0) return complete;
  std::vector<TokenId> sorted(alphabet.begin(), alphabet.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  const SequenceSpaceConfig& space = policy.space();

  std::unordered_map<Eigen::Index, Eigen::VectorXd> log_q;
  const auto step_log_probs = [&](int position, TokenId previous)
      -> const Eigen::VectorXd& {
    const StepContext ctx{sentiment, role, position, previous};
    const Eigen::Index row = policy.ContextRow(ctx);
    auto it = log_q.find(row);
    if (it == log_q.end()) {
      it = log_q.emplace(row, policy.StepDistribution(ctx).array().log().matrix())
               .first;
    }
    return it->second;
  };

  std::priority_queue<Partial, std::vector<Partial>, PartialLess> frontier;
  frontier.push({0.0, {}});
  double kth = -INFINITY;
  while (!frontier.empty()) {
    Partial top = frontier.top();
    frontier.pop();
    if (complete.size() >= k && top.score < kth) break;
    const auto length = static_cast<int>(top.tokens.size());
    if (length >= space.l_min) {
      complete.push_back({EmojiSequence{top.tokens}, top.score});
      if (complete.size() >= k) {
        std::nth_element(complete.begin(),
                         complete.begin() + static_cast<std::ptrdiff_t>(k - 1),
                         complete.end(), ScoredBefore);
        kth = complete[k - 1].log_prob;
      }
    }
    if (length < space.l_max && !sorted.empty()) {
      const TokenId previous = top.tokens.empty() ? kStartToken : top.tokens.back();
      const Eigen::VectorXd& lp = step_log_probs(length, previous);
      for (TokenId token : sorted) {
        Partial child{top.score + lp[token], top.tokens};
        child.tokens.push_back(token);
        if (complete.size() >= k && child.score < kth) continue;
        frontier.push(std::move(child));
      }
    }
  }
  std::sort(complete.begin(), complete.end(), ScoredBefore);
  if (complete.size() > k) complete.resize(k);
  return complete;
}

RankedCandidates RankCandidates(const Policy& policy, Sentiment sentiment,
                                std::size_t k, const AttackConfig& cfg,
                                const EmojiLexicon& lexicon) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const std::vector<TokenId> alphabet = AllowedTokens(cfg, lexicon, sentiment);
  const std::vector<ScoredSequence> prefixes =
      TopSequences(policy, sentiment, Role::kPrefix, alphabet, k);
  const std::vector<ScoredSequence> suffixes =
      TopSequences(policy, sentiment, Role::kSuffix, alphabet, k);

  std::vector<CandidatePair> pairs;
  pairs.reserve(prefixes.size() * suffixes.size());
  for (const ScoredSequence& p : prefixes) {
    for (const ScoredSequence& s : suffixes) {
      pairs.push_back({p.sequence, s.sequence, p.log_prob + s.log_prob});
    }
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const CandidatePair& a, const CandidatePair& b) {
              if (a.score != b.score) return a.score > b.score;
              if (a.prefix != b.prefix) return a.prefix < b.prefix;
              return a.suffix < b.suffix;
            });
  RankedCandidates ranked;
  ranked.exhausted = pairs.size() < k;
  if (pairs.size() > k) pairs.resize(k);
  ranked.pairs = std::move(pairs);
  return ranked;
}

PolicyRanker::PolicyRanker(const Policy& policy, const EmojiLexicon& lexicon,
                           AttackConfig cfg)
    : policy_(policy), lexicon_(lexicon), cfg_(std::move(cfg)) {
  cfg_.Validate();
  if (policy_.num_emoji() != lexicon_.size()) {
    throw std::invalid_argument("policy alphabet size " +
                                std::to_string(policy_.num_emoji()) +
                                " does not match lexicon size " +
                                std::to_string(lexicon_.size()));
  }
  if (cfg_.space.l_min < policy_.space().l_min ||
      cfg_.space.l_max > policy_.space().l_max) {
    throw std::invalid_argument("attack space exceeds the policy space");
  }
}

RankedCandidates PolicyRanker::Rank(const AttackTarget& target, std::size_t k,
                                    std::uint64_t) const {
  if (cfg_.space == policy_.space()) {
    return RankCandidates(policy_, target.sentiment, k, cfg_, lexicon_);
  }
  // Narrower attack space: rank with a view of the policy clipped to it.
  Policy clipped(policy_.num_emoji(), cfg_.space);
  for (int sentiment = 0; sentiment < 3; ++sentiment) {
    for (int role = 0; role < 2; ++role) {
      for (int pos = 0; pos < std::max(cfg_.space.l_max, 1); ++pos) {
        for (TokenId prev = kStartToken;
             prev < static_cast<TokenId>(policy_.num_emoji()); ++prev) {
          const StepContext ctx{static_cast<Sentiment>(sentiment),
                                static_cast<Role>(role), pos, prev};
          clipped.theta().row(clipped.ContextRow(ctx)) =
              policy_.theta().row(policy_.ContextRow(ctx));
        }
      }
    }
  }
  clipped.elp_w() = policy_.elp_w();
  clipped.elp_b() = policy_.elp_b();
  return RankCandidates(clipped, target.sentiment, k, cfg_, lexicon_);
}

RandomRanker::RandomRanker(const EmojiLexicon& lexicon, AttackConfig cfg)
    : lexicon_(lexicon), cfg_(std::move(cfg)) {
  cfg_.Validate();
}

RankedCandidates RandomRanker::Rank(const AttackTarget& target, std::size_t k,
                                    std::uint64_t seed) const {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const std::vector<TokenId> alphabet =
      AllowedTokens(cfg_, lexicon_, target.sentiment);
  const SequenceSpaceConfig& space = cfg_.space;
  const std::size_t per_side = CountSequences(alphabet.size(), space, k + 1);
  const std::size_t total =
      per_side > k ? k + 1 : std::min(per_side * per_side, k + 1);

  RankedCandidates ranked;
  ranked.exhausted = total < k;
  const std::size_t want = std::min(k, total);
  std::mt19937_64 rng(seed);
  const auto draw_side = [&] {
    EmojiSequence seq;
    const int length =
        space.l_min + std::min(space.num_lengths() - 1,
                               static_cast<int>(UniformUnit(rng) *
                                                space.num_lengths()));
    for (int i = 0; i < length; ++i) {
      const auto idx = std::min(
          alphabet.size() - 1,
          static_cast<std::size_t>(UniformUnit(rng) *
                                   static_cast<double>(alphabet.size())));
      seq.tokens.push_back(alphabet[idx]);
    }
    return seq;
  };
  std::set<std::pair<EmojiSequence, EmojiSequence>> seen;
  while (ranked.pairs.size() < want) {
    if (alphabet.empty() && space.l_max > 0 && space.l_min > 0) break;
    CandidatePair pair{draw_side(), draw_side(), 0.0};
    if (seen.emplace(pair.prefix, pair.suffix).second) {
      ranked.pairs.push_back(std::move(pair));
    }
  }
  return ranked;
}

}  // namespace emoji_attack
