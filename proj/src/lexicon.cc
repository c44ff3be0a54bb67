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

#include "emoji_attack/lexicon.h"

#include <unicode/uchar.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "emoji_attack/unicode.h"
#include "json.hpp"

namespace emoji_attack {
namespace {

std::size_t SentimentIndex(Sentiment s) { return static_cast<std::size_t>(s); }

bool IsPrintableAscii(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return c > 0x20 && c < 0x7F;
  });
}

// Word characters block emoticon matches on either side.
bool IsWordChar(char32_t cp) { return u_isalnum(static_cast<UChar32>(cp)); }

char32_t LastCodePoint(std::string_view text, std::size_t end) {
  if (end == 0) return 0;
  std::size_t start = end - 1;
  while (start > 0 && (static_cast<unsigned char>(text[start]) & 0xC0) == 0x80) {
    --start;
  }
  const std::u32string cps = unicode::DecodeUtf8(text.substr(start, end - start));
  return cps.empty() ? 0 : cps.back();
}

char32_t FirstCodePoint(std::string_view text, std::size_t start) {
  if (start >= text.size()) return 0;
  std::size_t end = start + 1;
  while (end < text.size() &&
         (static_cast<unsigned char>(text[end]) & 0xC0) == 0x80) {
    ++end;
  }
  const std::u32string cps =
      unicode::DecodeUtf8(text.substr(start, end - start));
  return cps.empty() ? 0 : cps.front();
}

}  // namespace

std::string_view ToString(Sentiment sentiment) {
  switch (sentiment) {
    case Sentiment::kPositive:
      return "positive";
    case Sentiment::kNegative:
      return "negative";
    case Sentiment::kNeutral:
      return "neutral";
  }
  return "neutral";
}

Sentiment ParseSentiment(std::string_view name) {
  if (name == "positive") return Sentiment::kPositive;
  if (name == "negative") return Sentiment::kNegative;
  if (name == "neutral") return Sentiment::kNeutral;
  throw std::invalid_argument("unknown sentiment label '" + std::string(name) +
                              "'");
}

std::string_view ToString(TokenKind kind) {
  return kind == TokenKind::kUnicodeEmoji ? "unicode_emoji" : "ascii_emoticon";
}

EmojiLexicon EmojiLexicon::FromTokens(std::vector<EmojiToken> tokens,
                                      std::span<const Sentiment> required) {
  EmojiLexicon lexicon;
  lexicon.tokens_ = std::move(tokens);
  for (std::size_t i = 0; i < lexicon.tokens_.size(); ++i) {
    EmojiToken& token = lexicon.tokens_[i];
    token.id = static_cast<TokenId>(i);
    if (token.surface.empty()) {
      throw LexiconError("token " + std::to_string(i) + ": empty surface");
    }
    token.surface = unicode::NormalizeNfc(token.surface);
    if (token.kind == TokenKind::kUnicodeEmoji &&
        !unicode::IsSingleGrapheme(token.surface)) {
      throw LexiconError("token " + std::to_string(i) + " '" + token.surface +
                         "' is not a single extended grapheme cluster");
    }
    if (token.kind == TokenKind::kAsciiEmoticon &&
        !IsPrintableAscii(token.surface)) {
      throw LexiconError("token " + std::to_string(i) + " '" + token.surface +
                         "' is not a printable ASCII emoticon");
    }
    if (!lexicon.by_surface_.emplace(token.surface, token.id).second) {
      throw LexiconError("duplicate surface '" + token.surface + "'");
    }
    lexicon.by_sentiment_[SentimentIndex(token.sentiment)].push_back(token.id);
    if (token.kind == TokenKind::kAsciiEmoticon) {
      lexicon.emoticons_.push_back(token.id);
    }
  }
  for (Sentiment s : required) {
    if (lexicon.by_sentiment_[SentimentIndex(s)].empty()) {
      throw LexiconError("lexicon has no " + std::string(ToString(s)) +
                         " tokens");
    }
  }
  std::stable_sort(lexicon.emoticons_.begin(), lexicon.emoticons_.end(),
                   [&](TokenId a, TokenId b) {
                     return lexicon.tokens_[a].surface.size() >
                            lexicon.tokens_[b].surface.size();
                   });
  return lexicon;
}

const EmojiToken& EmojiLexicon::token(TokenId id) const {
  if (!contains(id)) {
    throw std::out_of_range("token id " + std::to_string(id) +
                            " outside lexicon");
  }
  return tokens_[static_cast<std::size_t>(id)];
}

std::optional<TokenId> EmojiLexicon::Find(std::string_view surface) const {
  const auto it = by_surface_.find(std::string(surface));
  if (it == by_surface_.end()) return std::nullopt;
  return it->second;
}

const std::vector<TokenId>& EmojiLexicon::Subspace(Sentiment sentiment) const {
  return by_sentiment_[SentimentIndex(sentiment)];
}

std::string EmojiLexicon::Fingerprint() const {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  const auto mix = [&hash](std::string_view bytes) {
    for (unsigned char c : bytes) {
      hash ^= c;
      hash *= 0x100000001b3ULL;
    }
    hash ^= 0xFF;
    hash *= 0x100000001b3ULL;
  };
  for (const EmojiToken& token : tokens_) {
    mix(token.surface);
    mix(ToString(token.kind));
    mix(ToString(token.sentiment));
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

EmojiLexicon LoadLexicon(std::string_view content,
                         std::span<const Sentiment> required) {
  std::vector<EmojiToken> tokens;
  std::istringstream in{std::string(content)};
  std::string line;
  std::size_t line_no = 0;
  std::unordered_set<std::string> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const std::string where = "lexicon line " + std::to_string(line_no) + ": ";
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw LexiconError(where + "malformed JSON (" + e.what() + ")");
    }
    if (!record.is_object() || !record.contains("surface") ||
        !record.contains("kind") || !record.contains("sentiment") ||
        !record["surface"].is_string() || !record["kind"].is_string() ||
        !record["sentiment"].is_string()) {
      throw LexiconError(where +
                         "expected string fields surface, kind, sentiment");
    }
    EmojiToken token;
    try {
      token.surface = unicode::NormalizeNfc(record["surface"].get<std::string>());
    } catch (const unicode::UnicodeError& e) {
      throw LexiconError(where + e.what());
    }
    const std::string kind = record["kind"].get<std::string>();
    if (kind == "unicode_emoji") {
      token.kind = TokenKind::kUnicodeEmoji;
    } else if (kind == "ascii_emoticon") {
      token.kind = TokenKind::kAsciiEmoticon;
    } else {
      throw LexiconError(where + "unknown kind '" + kind + "'");
    }
    try {
      token.sentiment = ParseSentiment(record["sentiment"].get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw LexiconError(where + e.what());
    }
    if (!seen.insert(token.surface).second) {
      throw LexiconError(where + "duplicate surface '" + token.surface + "'");
    }
    tokens.push_back(std::move(token));
  }
  try {
    return EmojiLexicon::FromTokens(std::move(tokens), required);
  } catch (const unicode::UnicodeError& e) {
    throw LexiconError(e.what());
  }
}

EmojiLexicon LoadLexiconFile(const std::string& path,
                             std::span<const Sentiment> required) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LexiconError("cannot open lexicon file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return LoadLexicon(buf.str(), required);
}

EmojiLexicon SentimentSubspace(const EmojiLexicon& lexicon,
                               Sentiment sentiment) {
  std::vector<EmojiToken> tokens;
  for (TokenId id : lexicon.Subspace(sentiment)) {
    tokens.push_back(lexicon.token(id));
  }
  return EmojiLexicon::FromTokens(std::move(tokens), {});
}

std::vector<TokenMatch> ParseEmojiTokens(std::string_view text,
                                         const EmojiLexicon& lexicon) {
  const std::string normalized = unicode::NormalizeNfc(text);
  const std::string_view view = normalized;
  const std::vector<std::size_t> bounds = unicode::GraphemeBoundaries(view);
  std::vector<TokenMatch> matches;

  std::size_t i = 0;
  while (i + 1 < bounds.size()) {
    const std::size_t start = bounds[i];
    const std::string_view cluster = view.substr(start, bounds[i + 1] - start);
    if (const auto id = lexicon.Find(cluster);
        id && lexicon.token(*id).kind == TokenKind::kUnicodeEmoji) {
      matches.push_back({*id, start});
      ++i;
      continue;
    }
    bool matched = false;
    if (static_cast<unsigned char>(view[start]) < 0x80 &&
        !IsWordChar(LastCodePoint(view, start))) {
      for (TokenId id : lexicon.emoticons_longest_first()) {
        const std::string& surface = lexicon.token(id).surface;
        if (view.compare(start, surface.size(), surface) != 0) continue;
        const std::size_t end = start + surface.size();
        const auto end_it = std::lower_bound(bounds.begin() + i, bounds.end(), end);
        if (end_it == bounds.end() || *end_it != end) continue;
        if (IsWordChar(FirstCodePoint(view, end))) continue;
        matches.push_back({id, start});
        i = static_cast<std::size_t>(end_it - bounds.begin());
        matched = true;
        break;
      }
    }
    if (!matched) ++i;
  }
  return matches;
}

}  // namespace emoji_attack
