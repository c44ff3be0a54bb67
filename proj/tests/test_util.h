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

#ifndef EMOJI_ATTACK_TESTS_TEST_UTIL_H_
#define EMOJI_ATTACK_TESTS_TEST_UTIL_H_

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "emoji_attack/lexicon.h"
#include "emoji_attack/sequence_space.h"

namespace emoji_attack::testing {

inline std::string DataPath(const std::string& name) {
  return std::string(EMOJI_ATTACK_DATA_DIR) + "/" + name;
}

inline std::string TestdataPath(const std::string& name) {
  return std::string(EMOJI_ATTACK_TESTDATA_DIR) + "/" + name;
}

inline std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline const EmojiLexicon& BundledLexicon() {
  static const EmojiLexicon lexicon = LoadLexiconFile(DataPath("lexicon.jsonl"));
  return lexicon;
}

// ids 0..3: 😀 positive, 😢 negative, :) positive, 😐 neutral.
inline EmojiLexicon SmallLexicon() {
  return EmojiLexicon::FromTokens({
      {0, "😀", TokenKind::kUnicodeEmoji, Sentiment::kPositive},
      {1, "😢", TokenKind::kUnicodeEmoji, Sentiment::kNegative},
      {2, ":)", TokenKind::kAsciiEmoticon, Sentiment::kPositive},
      {3, "😐", TokenKind::kUnicodeEmoji, Sentiment::kNeutral},
  });
}

inline EmojiSequence Seq(std::vector<TokenId> ids) {
  return EmojiSequence{std::move(ids)};
}

}  // namespace emoji_attack::testing

#endif  // EMOJI_ATTACK_TESTS_TEST_UTIL_H_
