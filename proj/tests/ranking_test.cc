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

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "gradient_checks.h"
#include "test_util.h"

namespace emoji_attack {
namespace {

using testing::Seq;
using testing::SmallLexicon;

AttackConfig Config(SequenceSpaceConfig space, bool consistency) {
  AttackConfig cfg;
  cfg.space = space;
  cfg.require_consistency = consistency;
  return cfg;
}

TEST(RankCandidatesTest, UniformTiesBreakByIds) {
  const EmojiLexicon lexicon = SmallLexicon();
  const Policy policy(4, {1, 1});
  const auto all = RankCandidates(policy, Sentiment::kPositive, 3,
                                  Config({1, 1}, false), lexicon);
  ASSERT_EQ(all.pairs.size(), 3u);
  EXPECT_EQ(all.pairs[0], (CandidatePair{Seq({0}), Seq({0})}));
  EXPECT_EQ(all.pairs[1], (CandidatePair{Seq({0}), Seq({1})}));
  EXPECT_EQ(all.pairs[2], (CandidatePair{Seq({0}), Seq({2})}));

  // Positive tokens only: 😀 (0) and :) (2).
  const auto pos = RankCandidates(policy, Sentiment::kPositive, 3,
                                  Config({1, 1}, true), lexicon);
  ASSERT_EQ(pos.pairs.size(), 3u);
  EXPECT_EQ(pos.pairs[0], (CandidatePair{Seq({0}), Seq({0})}));
  EXPECT_EQ(pos.pairs[1], (CandidatePair{Seq({0}), Seq({2})}));
  EXPECT_EQ(pos.pairs[2], (CandidatePair{Seq({2}), Seq({0})}));
}

TEST(RankCandidatesTest, MatchesBruteForceOrder) {
  const EmojiLexicon lexicon = SmallLexicon();
  Policy policy(4, {1, 2});
  testing::RandomizePolicy(policy, 33, 1.0);
  const Sentiment s = Sentiment::kNegative;

  struct Scored {
    double lp;
    EmojiSequence prefix, suffix;
  };
  std::vector<Scored> brute;
  const auto seqs = EnumerateSequences({0, 1, 2, 3}, {1, 2});
  for (const auto& p : seqs) {
    for (const auto& q : seqs) {
      brute.push_back({policy.LogProb(p, s, Role::kPrefix) +
                           policy.LogProb(q, s, Role::kSuffix),
                       p, q});
    }
  }
  std::sort(brute.begin(), brute.end(), [](const Scored& a, const Scored& b) {
    return std::tie(b.lp, a.prefix, a.suffix) <
           std::tie(a.lp, b.prefix, b.suffix);
  });
  ASSERT_EQ(brute.size(), 400u);

  const auto ranked =
      RankCandidates(policy, s, 400, Config({1, 2}, false), lexicon);
  ASSERT_EQ(ranked.pairs.size(), 400u);
  EXPECT_FALSE(ranked.exhausted);
  for (std::size_t i = 0; i < 400; ++i) {
    EXPECT_EQ(ranked.pairs[i].prefix, brute[i].prefix) << i;
    EXPECT_EQ(ranked.pairs[i].suffix, brute[i].suffix) << i;
    EXPECT_NEAR(ranked.pairs[i].score, brute[i].lp, 1e-9) << i;
  }

  const auto over =
      RankCandidates(policy, s, 401, Config({1, 2}, false), lexicon);
  EXPECT_TRUE(over.exhausted);
  EXPECT_EQ(over.pairs.size(), 400u);
}

TEST(RankCandidatesTest, NestedAcrossBudgets) {
  const EmojiLexicon& lexicon = testing::BundledLexicon();
  Policy policy(lexicon.size(), {1, 3});
  testing::RandomizePolicy(policy, 5, 0.7);
  const AttackConfig cfg = Config({1, 3}, true);
  for (Sentiment s :
       {Sentiment::kPositive, Sentiment::kNegative, Sentiment::kNeutral}) {
    const auto big = RankCandidates(policy, s, 30, cfg, lexicon).pairs;
    ASSERT_EQ(big.size(), 30u);
    for (std::size_t k : {1u, 3u, 15u}) {
      const auto small = RankCandidates(policy, s, k, cfg, lexicon).pairs;
      ASSERT_EQ(small.size(), k);
      EXPECT_TRUE(std::equal(small.begin(), small.end(), big.begin()));
    }
    for (const auto& pair : big) {
      EXPECT_EQ(SentimentConsistency(s, pair.prefix, pair.suffix, lexicon), 1);
      EXPECT_TRUE(ValidateSequence(pair.prefix, cfg.space, lexicon));
      EXPECT_TRUE(ValidateSequence(pair.suffix, cfg.space, lexicon));
    }
  }
}

TEST(RankCandidatesTest, TopPairSurvivesLogitScaling) {
  const EmojiLexicon lexicon = SmallLexicon();
  Policy policy(4, {1, 1});
  testing::RandomizePolicy(policy, 11, 1.0);
  policy.elp_w() = Eigen::MatrixXd::Identity(4, 4) * 4.0;
  policy.elp_b().setZero();
  const AttackConfig cfg = Config({1, 1}, false);
  const auto before =
      RankCandidates(policy, Sentiment::kNeutral, 1, cfg, lexicon).pairs;
  for (double c : {0.25, 3.0, 10.0}) {
    Policy scaled = policy;
    scaled.theta() *= c;
    EXPECT_EQ(RankCandidates(scaled, Sentiment::kNeutral, 1, cfg, lexicon)
                  .pairs.front(),
              before.front())
        << c;
  }
}

TEST(RankCandidatesTest, RejectsZeroBudget) {
  const EmojiLexicon lexicon = SmallLexicon();
  const Policy policy(4, {1, 1});
  EXPECT_THROW(RankCandidates(policy, Sentiment::kPositive, 0,
                              Config({1, 1}, false), lexicon),
               std::invalid_argument);
}

TEST(PolicyRankerTest, ValidatesAgainstLexiconAndSpace) {
  const EmojiLexicon lexicon = SmallLexicon();
  const Policy three(3, {1, 1});
  EXPECT_THROW(PolicyRanker(three, lexicon, Config({1, 1}, true)),
               std::invalid_argument);
  const Policy one(4, {1, 1});
  EXPECT_THROW(PolicyRanker(one, lexicon, Config({1, 2}, true)),
               std::invalid_argument);
  const Policy four(4, {1, 2});
  // A narrower attack space is fine.
  const PolicyRanker narrow(four, lexicon, Config({2, 2}, false));
  for (const auto& p :
       narrow.Rank({"x", "neutral", Sentiment::kNeutral}, 10, 0).pairs) {
    EXPECT_EQ(p.prefix.size(), 2u);
    EXPECT_EQ(p.suffix.size(), 2u);
  }
  const PolicyRanker ok(four, lexicon, Config({1, 2}, true));
  const AttackTarget target{"good", "positive", Sentiment::kPositive};
  EXPECT_EQ(ok.Rank(target, 5, 1).pairs, ok.Rank(target, 5, 99).pairs);
}

TEST(RandomRankerTest, DeterministicNestedAndDistinct) {
  const EmojiLexicon& lexicon = testing::BundledLexicon();
  const RandomRanker ranker(lexicon, Config({1, 3}, true));
  const AttackTarget target{"meh", "negative", Sentiment::kNegative};
  const auto big = ranker.Rank(target, 30, 42).pairs;
  ASSERT_EQ(big.size(), 30u);
  EXPECT_EQ(big, ranker.Rank(target, 30, 42).pairs);
  EXPECT_NE(big, ranker.Rank(target, 30, 43).pairs);
  for (std::size_t k : {1u, 3u, 15u}) {
    const auto small = ranker.Rank(target, k, 42).pairs;
    EXPECT_TRUE(std::equal(small.begin(), small.end(), big.begin()));
  }
  std::set<std::pair<EmojiSequence, EmojiSequence>> seen;
  for (const auto& p : big) {
    EXPECT_TRUE(seen.emplace(p.prefix, p.suffix).second);
    EXPECT_EQ(SentimentConsistency(Sentiment::kNegative, p.prefix, p.suffix,
                                   lexicon),
              1);
  }
}

TEST(RandomRankerTest, ExhaustsSmallSpaces) {
  const EmojiLexicon lexicon = SmallLexicon();
  const RandomRanker ranker(lexicon, Config({1, 1}, true));
  // One neutral token: a single pair exists.
  const auto ranked =
      ranker.Rank({"meh", "neutral", Sentiment::kNeutral}, 3, 0);
  EXPECT_TRUE(ranked.exhausted);
  ASSERT_EQ(ranked.pairs.size(), 1u);
  EXPECT_EQ(ranked.pairs[0], (CandidatePair{Seq({3}), Seq({3})}));
}

}  // namespace
}  // namespace emoji_attack
