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

#include <gtest/gtest.h>

#include <cmath>
#include <thread>

#include "emoji_attack/naive_bayes.h"
#include "emoji_attack/oracle.h"
#include "emoji_attack/prediction.h"
#include "emoji_attack/sentiment.h"
#include "test_util.h"

namespace emoji_attack {
namespace {

using testing::Seq;
using testing::SmallLexicon;

Prediction Soft(std::string label, ProbabilityMap probs) {
  return Prediction{std::move(label), std::move(probs), {}};
}

TEST(PredictionTest, AcceptsValidDistributions) {
  EXPECT_NO_THROW(ValidatePrediction(Soft("a", {{"a", 0.9}, {"b", 0.1}})));
  EXPECT_NO_THROW(ValidatePrediction(Prediction{"a", std::nullopt, {}}));
  // Tie: either tied label is a valid argmax.
  EXPECT_NO_THROW(ValidatePrediction(Soft("b", {{"a", 0.5}, {"b", 0.5}})));
}

TEST(PredictionTest, RejectsInvalidDistributions) {
  EXPECT_THROW(ValidatePrediction(Soft("a", {{"a", 0.7}, {"b", 0.1}})),
               ProtocolError);
  EXPECT_THROW(ValidatePrediction(Soft("b", {{"a", 0.9}, {"b", 0.1}})),
               ProtocolError);
  EXPECT_THROW(ValidatePrediction(Soft("a", {{"a", 1.1}, {"b", -0.1}})),
               ProtocolError);
  EXPECT_THROW(ValidatePrediction(Soft("a", {{"a", NAN}, {"b", 0.1}})),
               ProtocolError);
  EXPECT_THROW(ValidatePrediction(Soft("c", {{"a", 0.5}, {"b", 0.5}})),
               ProtocolError);
}

TEST(PredictionTest, ArgmaxBreaksTiesByLabel) {
  EXPECT_EQ(ArgmaxLabel({{"b", 0.4}, {"a", 0.4}, {"c", 0.2}}), "a");
}

TEST(OracleTest, LedgerCountsEveryCall) {
  FunctionOracle oracle("const", [](std::string_view) {
    return Prediction{"a", ProbabilityMap{{"a", 1.0}, {"b", 0.0}}, {}};
  });
  for (int i = 0; i < 100; ++i) oracle.Classify("text");
  EXPECT_EQ(oracle.ledger().queries(), 100u);
  EXPECT_EQ(oracle.ledger().recent_calls().size(), 100u);
}

TEST(OracleTest, LedgerCountsFailedAndInvalidCalls) {
  int calls = 0;
  FunctionOracle oracle("flaky", [&](std::string_view) -> Prediction {
    if (++calls % 2 == 0) throw OracleError("down");
    return Soft("a", {{"a", 0.5}, {"b", 0.3}});  // sums to 0.8
  });
  EXPECT_THROW(oracle.Classify("x"), ProtocolError);
  EXPECT_THROW(oracle.Classify("x"), OracleError);
  EXPECT_EQ(oracle.ledger().queries(), 2u);
}

TEST(OracleTest, EmptyTextRejectedWithoutQuery) {
  FunctionOracle oracle("const", [](std::string_view) {
    return Prediction{"a", std::nullopt, {}};
  });
  EXPECT_THROW(oracle.Classify(""), std::invalid_argument);
  EXPECT_EQ(oracle.ledger().queries(), 0u);
}

TEST(OracleTest, LedgerIsExactUnderConcurrency) {
  FunctionOracle oracle("const", [](std::string_view) {
    return Prediction{"a", std::nullopt, {}};
  });
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&] {
      for (int i = 0; i < 500; ++i) oracle.Classify("x");
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(oracle.ledger().queries(), 4000u);
  EXPECT_LE(oracle.ledger().recent_calls().size(), 256u);
}

// Four documents, six features, counts small enough to do by hand:
//   positive: good x2, fun, 😀   (4 tokens)
//   negative: bad x2, dull, 😢   (4 tokens)
// Add-one: p(f|c) = (n + 1) / (4 + 6).
class NaiveBayesToyTest : public ::testing::Test {
 protected:
  NaiveBayesToyTest()
      : lexicon_(SmallLexicon()),
        model_(NaiveBayesClassifier::Train({{"good fun", "positive"},
                                            {"good 😀", "positive"},
                                            {"bad dull", "negative"},
                                            {"bad 😢", "negative"}},
                                           lexicon_)) {}

  static double PosteriorPositive(double pos_lik, double neg_lik) {
    return pos_lik / (pos_lik + neg_lik);  // equal priors
  }

  EmojiLexicon lexicon_;
  NaiveBayesClassifier model_;
};

TEST_F(NaiveBayesToyTest, TrainingAccuracyIsPerfect) {
  EXPECT_EQ(model_.Classify("good fun").label, "positive");
  EXPECT_EQ(model_.Classify("good 😀").label, "positive");
  EXPECT_EQ(model_.Classify("bad dull").label, "negative");
  EXPECT_EQ(model_.Classify("bad 😢").label, "negative");
  EXPECT_EQ(model_.vocabulary_size(), 6u);
}

TEST_F(NaiveBayesToyTest, PosteriorMatchesHandComputation) {
  const Prediction p = model_.Classify("good fun");
  const double expected = PosteriorPositive(0.3 * 0.2, 0.1 * 0.1);  // 6/7
  EXPECT_NEAR(p.probs->at("positive"), expected, 1e-12);
  EXPECT_NEAR(p.probs->at("negative"), 1.0 - expected, 1e-12);
}

TEST_F(NaiveBayesToyTest, TrainingEmojiShiftsPosterior) {
  const double before = model_.Classify("good").probs->at("positive");
  const double after = model_.Classify("good 😀").probs->at("positive");
  EXPECT_NEAR(before, PosteriorPositive(0.3, 0.1), 1e-12);
  EXPECT_NEAR(after, PosteriorPositive(0.3 * 0.2, 0.1 * 0.1), 1e-12);
  EXPECT_GT(after, before);
  // Appended without a space the emoji is still one feature.
  EXPECT_NEAR(model_.Classify("good😀").probs->at("positive"), after, 1e-12);
}

TEST_F(NaiveBayesToyTest, UnknownFeaturesAreIgnored) {
  EXPECT_NEAR(model_.Classify("zebra").probs->at("positive"), 0.5, 1e-12);
}

TEST_F(NaiveBayesToyTest, DeterministicAndRejectsEmpty) {
  const Prediction a = model_.Classify("good bad 😀 😢 :)");
  const Prediction b = model_.Classify("good bad 😀 😢 :)");
  EXPECT_EQ(a.label, b.label);
  EXPECT_EQ(*a.probs, *b.probs);
  EXPECT_THROW(model_.Classify(""), std::invalid_argument);
}

TEST(NaiveBayesTest, SingleLabelCorpusRejected) {
  const EmojiLexicon lexicon = SmallLexicon();
  EXPECT_THROW(NaiveBayesClassifier::Train({{"a", "x"}, {"b", "x"}}, lexicon),
               std::invalid_argument);
}

TEST(NaiveBayesTest, FeaturesKeepEmojiOutOfWords) {
  const EmojiLexicon lexicon = SmallLexicon();
  EXPECT_EQ(ExtractFeatures("Great😀movie :) !", lexicon),
            (std::vector<std::string>{"great", "emoji:😀", "movie",
                                      "emoji::)"}));
}

TEST(SentimentTest, MajorityVote) {
  const EmojiLexicon lexicon = SmallLexicon();
  EXPECT_EQ(SentimentOfSequence(Seq({0, 2}), lexicon), Sentiment::kPositive);
  EXPECT_EQ(SentimentOfSequence(Seq({0, 1}), lexicon), Sentiment::kNeutral);
  EXPECT_EQ(SentimentOfSequence(Seq({0, 0, 1}), lexicon), Sentiment::kPositive);
  EXPECT_EQ(SentimentOfSequence(Seq({1, 3, 1}), lexicon), Sentiment::kNegative);
  EXPECT_EQ(SentimentOfSequence(Seq({0, 1, 3}), lexicon), Sentiment::kNeutral);
  EXPECT_THROW(SentimentOfSequence(Seq({}), lexicon), std::invalid_argument);
}

TEST(LabelMapTest, GoEmotionsCoarsening) {
  const LabelSentimentMap map = LabelSentimentMap::GoEmotions();
  EXPECT_EQ(map.Coarsen("joy"), Sentiment::kPositive);
  EXPECT_EQ(map.Coarsen("anger"), Sentiment::kNegative);
  EXPECT_EQ(map.Coarsen("neutral"), Sentiment::kNeutral);
  EXPECT_EQ(map.entries().size(), 28u);
}

TEST(LabelMapTest, IncompleteMapRejectsUnmapped) {
  const LabelSentimentMap map =
      LabelSentimentMap::FromJson(R"({"joy": "positive", "anger": "negative"})");
  EXPECT_EQ(map.Coarsen("joy"), Sentiment::kPositive);
  EXPECT_FALSE(map.Covers("curiosity"));
  EXPECT_THROW(map.Coarsen("curiosity"), UnmappedLabelError);
  EXPECT_THROW(LabelSentimentMap::FromJson(R"({"joy": "happy"})"),
               std::invalid_argument);
}

}  // namespace
}  // namespace emoji_attack
