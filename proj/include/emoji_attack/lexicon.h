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

#ifndef EMOJI_ATTACK_LEXICON_H_
#define EMOJI_ATTACK_LEXICON_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace emoji_attack {

enum class Sentiment { kPositive, kNegative, kNeutral };

inline constexpr Sentiment kAllSentiments[] = {
    Sentiment::kPositive, Sentiment::kNegative, Sentiment::kNeutral};

std::string_view ToString(Sentiment sentiment);
// Throws std::invalid_argument for anything but positive/negative/neutral.
Sentiment ParseSentiment(std::string_view name);

using TokenId = std::int32_t;

enum class TokenKind { kUnicodeEmoji, kAsciiEmoticon };

std::string_view ToString(TokenKind kind);

struct EmojiToken {
  TokenId id = 0;
  std::string surface;
  TokenKind kind = TokenKind::kUnicodeEmoji;
  Sentiment sentiment = Sentiment::kNeutral;
};

class LexiconError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TokenMatch {
  TokenId id;
  std::size_t offset;  // byte offset into the NFC form of the parsed text

  friend bool operator==(const TokenMatch&, const TokenMatch&) = default;
};

// The emoji alphabet. Immutable once built; safe to share across threads.
class EmojiLexicon {
 public:
  EmojiLexicon() = default;

  // Validates and indexes `tokens`; ids are reassigned densely in order.
  // Every class in `required` must be non-empty.
  static EmojiLexicon FromTokens(std::vector<EmojiToken> tokens,
                                 std::span<const Sentiment> required =
                                     kAllSentiments);

  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }
  const std::vector<EmojiToken>& tokens() const { return tokens_; }
  const EmojiToken& token(TokenId id) const;
  bool contains(TokenId id) const {
    return id >= 0 && static_cast<std::size_t>(id) < tokens_.size();
  }

  std::optional<TokenId> Find(std::string_view surface) const;

  // Ids of every token tagged `sentiment`, ascending.
  const std::vector<TokenId>& Subspace(Sentiment sentiment) const;

  // ASCII emoticon ids, longest surface first.
  const std::vector<TokenId>& emoticons_longest_first() const {
    return emoticons_;
  }

  // Stable 64-bit FNV-1a digest over (surface, kind, sentiment) in id order.
  std::string Fingerprint() const;

 private:
  std::vector<EmojiToken> tokens_;
  std::unordered_map<std::string, TokenId> by_surface_;
  std::vector<TokenId> emoticons_;
  std::vector<TokenId> by_sentiment_[3];
};

// Parses the JSON Lines lexicon format:
//   {"surface": "...", "kind": "unicode_emoji"|"ascii_emoticon",
//    "sentiment": "positive"|"negative"|"neutral"}
// Blank lines are skipped. Errors name the 1-based line number.
EmojiLexicon LoadLexicon(std::string_view content,
                         std::span<const Sentiment> required = kAllSentiments);
EmojiLexicon LoadLexiconFile(const std::string& path,
                             std::span<const Sentiment> required =
                                 kAllSentiments);

// Sub-lexicon of the tokens tagged `sentiment`, with dense ids of its own.
EmojiLexicon SentimentSubspace(const EmojiLexicon& lexicon,
                               Sentiment sentiment);

// All non-overlapping lexicon matches in ascending offset order. Unicode
// emoji match whole extended grapheme clusters; ASCII emoticons match
// longest-first and only between word boundaries. The text is NFC-normalized
// first; throws unicode::UnicodeError on malformed UTF-8.
std::vector<TokenMatch> ParseEmojiTokens(std::string_view text,
                                         const EmojiLexicon& lexicon);

}  // namespace emoji_attack

#endif  // EMOJI_ATTACK_LEXICON_H_
