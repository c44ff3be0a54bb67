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

#ifndef EMOJI_ATTACK_UNICODE_H_
#define EMOJI_ATTACK_UNICODE_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace emoji_attack::unicode {

class UnicodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Decodes strict UTF-8 (no overlongs, surrogates or code points past
// U+10FFFF). Throws UnicodeError with the offending byte offset.
std::u32string DecodeUtf8(std::string_view text);

bool IsValidUtf8(std::string_view text);

void AppendUtf8(char32_t cp, std::string& out);
std::string EncodeUtf8(std::u32string_view cps);

// Canonical composition (NFC). Input must be valid UTF-8.
std::string NormalizeNfc(std::string_view text);

// Grapheme_Cluster_Break values used by the extended grapheme cluster rules.
enum class BreakClass {
  kOther,
  kCr,
  kLf,
  kControl,
  kExtend,
  kZwj,
  kRegionalIndicator,
  kPrepend,
  kSpacingMark,
  kL,
  kV,
  kT,
  kLv,
  kLvt,
};

BreakClass GetBreakClass(char32_t cp);
bool IsExtendedPictographic(char32_t cp);

// Byte offsets of extended grapheme cluster boundaries, always starting with
// 0 and ending with text.size() (a single {0} for empty input).
std::vector<std::size_t> GraphemeBoundaries(std::string_view text);

// Convenience view over GraphemeBoundaries.
std::vector<std::string_view> SplitGraphemes(std::string_view text);

// True iff `text` is exactly one extended grapheme cluster.
bool IsSingleGrapheme(std::string_view text);

}  // namespace emoji_attack::unicode

#endif  // EMOJI_ATTACK_UNICODE_H_
