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

#include "emoji_attack/checkpoint.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "gradient_checks.h"
#include "test_util.h"

namespace emoji_attack {
namespace {

namespace fs = std::filesystem;

class CheckpointTest : public ::testing::Test {
 protected:
  void SetUp() override {
    testing::RandomizePolicy(policy_, 3, 1.0);
    dir_ = fs::temp_directory_path() /
           ("ckpt-" + std::to_string(::getpid()) + "-" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  EmojiLexicon lexicon_ = testing::SmallLexicon();
  Policy policy_{4, {1, 2}};
  TrainingMetadata meta_{99, 30, 60};
  fs::path dir_;
};

TEST_F(CheckpointTest, RoundTripIsExact) {
  const std::string path = (dir_ / "policy.json").string();
  SavePolicy(policy_, lexicon_, meta_, path);
  const LoadedPolicy loaded = LoadPolicy(path, lexicon_);
  EXPECT_EQ(loaded.policy.theta(), policy_.theta());
  EXPECT_EQ(loaded.policy.elp_w(), policy_.elp_w());
  EXPECT_EQ(loaded.policy.elp_b(), policy_.elp_b());
  EXPECT_EQ(loaded.policy.space(), policy_.space());
  EXPECT_EQ(loaded.metadata.seed, 99u);
  EXPECT_EQ(loaded.metadata.pretrain_epochs, 30);
  EXPECT_EQ(loaded.metadata.epochs, 60);
  // Saving again gives the same bytes.
  const std::string again = (dir_ / "again.json").string();
  SavePolicy(loaded.policy, lexicon_, loaded.metadata, again);
  EXPECT_EQ(testing::ReadFile(path), testing::ReadFile(again));
}

TEST_F(CheckpointTest, RejectsDifferentVocabulary) {
  const auto doc = PolicyToJson(policy_, lexicon_, meta_);
  const EmojiLexicon other = EmojiLexicon::FromTokens({
      {0, "😀", TokenKind::kUnicodeEmoji, Sentiment::kPositive},
      {1, "😭", TokenKind::kUnicodeEmoji, Sentiment::kNegative},
      {2, ":)", TokenKind::kAsciiEmoticon, Sentiment::kPositive},
      {3, "😐", TokenKind::kUnicodeEmoji, Sentiment::kNeutral},
  });
  EXPECT_THROW(PolicyFromJson(doc, other), CheckpointError);
}

TEST_F(CheckpointTest, RejectsBadDocuments) {
  const auto good = PolicyToJson(policy_, lexicon_, meta_);
  EXPECT_NO_THROW(PolicyFromJson(good, lexicon_));

  auto version = good;
  version["version"] = kCheckpointVersion + 1;
  EXPECT_THROW(PolicyFromJson(version, lexicon_), CheckpointError);

  auto format = good;
  format["format"] = "something-else";
  EXPECT_THROW(PolicyFromJson(format, lexicon_), CheckpointError);

  auto shape = good;
  shape["theta"].erase(0);
  EXPECT_THROW(PolicyFromJson(shape, lexicon_), CheckpointError);

  auto missing = good;
  missing.erase("elp_b");
  EXPECT_THROW(PolicyFromJson(missing, lexicon_), CheckpointError);

  EXPECT_THROW(PolicyFromJson(nlohmann::json::array(), lexicon_),
               CheckpointError);
}

TEST_F(CheckpointTest, RejectsUnreadableFiles) {
  EXPECT_THROW(LoadPolicy((dir_ / "missing.json").string(), lexicon_),
               CheckpointError);
  const fs::path junk = dir_ / "junk.json";
  std::ofstream(junk) << "{not json";
  EXPECT_THROW(LoadPolicy(junk.string(), lexicon_), CheckpointError);
}

}  // namespace
}  // namespace emoji_attack
