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

#include "emoji_attack/unicode.h"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <utility>

namespace emoji_attack::unicode {
namespace {

struct Decoded {
  char32_t cp;
  std::size_t length;
};

// Returns length 0 on malformed input.
Decoded DecodeOne(std::string_view text, std::size_t pos) {
  const auto byte = [&](std::size_t i) {
    return static_cast<unsigned char>(text[i]);
  };
  const unsigned char lead = byte(pos);
  if (lead < 0x80) return {lead, 1};
  std::size_t need;
  char32_t cp;
  char32_t min;
  if ((lead & 0xE0) == 0xC0) {
    need = 1;
    cp = lead & 0x1F;
    min = 0x80;
  } else if ((lead & 0xF0) == 0xE0) {
    need = 2;
    cp = lead & 0x0F;
    min = 0x800;
  } else if ((lead & 0xF8) == 0xF0) {
    need = 3;
    cp = lead & 0x07;
    min = 0x10000;
  } else {
    return {0, 0};
  }
  if (pos + need >= text.size()) return {0, 0};
  for (std::size_t i = 1; i <= need; ++i) {
    const unsigned char c = byte(pos + i);
    if ((c & 0xC0) != 0x80) return {0, 0};
    cp = (cp << 6) | (c & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    return {0, 0};
  }
  return {cp, need + 1};
}

[[noreturn]] void ThrowMalformed(std::size_t offset) {
  throw UnicodeError("invalid UTF-8 at byte offset " + std::to_string(offset));
}

bool BreakBetween(BreakClass prev, BreakClass next, bool emoji_zwj_context,
                  std::size_t ri_run) {
  using B = BreakClass;
  // GB3, GB4, GB5
  if (prev == B::kCr && next == B::kLf) return false;
  if (prev == B::kCr || prev == B::kLf || prev == B::kControl) return true;
  if (next == B::kCr || next == B::kLf || next == B::kControl) return true;
  // GB6, GB7, GB8
  if (prev == B::kL &&
      (next == B::kL || next == B::kV || next == B::kLv || next == B::kLvt)) {
    return false;
  }
  if ((prev == B::kLv || prev == B::kV) && (next == B::kV || next == B::kT)) {
    return false;
  }
  if ((prev == B::kLvt || prev == B::kT) && next == B::kT) return false;
  // GB9, GB9a, GB9b
  if (next == B::kExtend || next == B::kZwj) return false;
  if (next == B::kSpacingMark) return false;
  if (prev == B::kPrepend) return false;
  // GB11 is decided by the caller through emoji_zwj_context.
  if (emoji_zwj_context) return false;
  // GB12, GB13
  if (prev == B::kRegionalIndicator && next == B::kRegionalIndicator) {
    return ri_run % 2 == 0;
  }
  return true;  // GB999
}

}  // namespace

std::u32string DecodeUtf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const Decoded d = DecodeOne(text, pos);
    if (d.length == 0) ThrowMalformed(pos);
    out.push_back(d.cp);
    pos += d.length;
  }
  return out;
}

bool IsValidUtf8(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    const Decoded d = DecodeOne(text, pos);
    if (d.length == 0) return false;
    pos += d.length;
  }
  return true;
}

void AppendUtf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string EncodeUtf8(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size() * 2);
  for (char32_t cp : cps) AppendUtf8(cp, out);
  return out;
}

std::string NormalizeNfc(std::string_view text) {
  if (!IsValidUtf8(text)) {
    // Re-run the strict decoder for a precise offset.
    DecodeUtf8(text);
  }
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) {
    throw UnicodeError(std::string("NFC normalizer unavailable: ") +
                       u_errorName(status));
  }
  const icu::UnicodeString source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  if (nfc->isNormalized(source, status) && U_SUCCESS(status)) {
    return std::string(text);
  }
  status = U_ZERO_ERROR;
  const icu::UnicodeString normalized = nfc->normalize(source, status);
  if (U_FAILURE(status)) {
    throw UnicodeError(std::string("NFC normalization failed: ") +
                       u_errorName(status));
  }
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

BreakClass GetBreakClass(char32_t cp) {
  switch (u_getIntPropertyValue(static_cast<UChar32>(cp),
                                UCHAR_GRAPHEME_CLUSTER_BREAK)) {
    case U_GCB_CR:
      return BreakClass::kCr;
    case U_GCB_LF:
      return BreakClass::kLf;
    case U_GCB_CONTROL:
      return BreakClass::kControl;
    case U_GCB_EXTEND:
      return BreakClass::kExtend;
    case U_GCB_ZWJ:
      return BreakClass::kZwj;
    case U_GCB_REGIONAL_INDICATOR:
      return BreakClass::kRegionalIndicator;
    case U_GCB_PREPEND:
      return BreakClass::kPrepend;
    case U_GCB_SPACING_MARK:
      return BreakClass::kSpacingMark;
    case U_GCB_L:
      return BreakClass::kL;
    case U_GCB_V:
      return BreakClass::kV;
    case U_GCB_T:
      return BreakClass::kT;
    case U_GCB_LV:
      return BreakClass::kLv;
    case U_GCB_LVT:
      return BreakClass::kLvt;
    default:
      return BreakClass::kOther;
  }
}

bool IsExtendedPictographic(char32_t cp) {
  return u_hasBinaryProperty(static_cast<UChar32>(cp),
                             UCHAR_EXTENDED_PICTOGRAPHIC) != 0;
}

std::vector<std::size_t> GraphemeBoundaries(std::string_view text) {
  std::vector<std::size_t> boundaries{0};
  if (text.empty()) return boundaries;

  std::size_t pos = 0;
  Decoded first = DecodeOne(text, pos);
  if (first.length == 0) ThrowMalformed(pos);
  BreakClass prev = GetBreakClass(first.cp);
  // GB11 state: seen ExtPict Extend* and, separately, that plus a trailing ZWJ.
  bool pict_run = IsExtendedPictographic(first.cp);
  bool pict_zwj = false;
  std::size_t ri_run = prev == BreakClass::kRegionalIndicator ? 1 : 0;
  pos += first.length;

  while (pos < text.size()) {
    const Decoded d = DecodeOne(text, pos);
    if (d.length == 0) ThrowMalformed(pos);
    const BreakClass next = GetBreakClass(d.cp);
    const bool next_pict = IsExtendedPictographic(d.cp);
    const bool gb11 = pict_zwj && next_pict;
    if (BreakBetween(prev, next, gb11, ri_run)) boundaries.push_back(pos);

    // Advance GB11 state.
    if (next_pict) {
      pict_run = true;
      pict_zwj = false;
    } else if (next == BreakClass::kExtend && pict_run) {
      pict_zwj = false;
    } else if (next == BreakClass::kZwj && pict_run) {
      pict_zwj = true;
      pict_run = false;
    } else {
      pict_run = false;
      pict_zwj = false;
    }
    ri_run = next == BreakClass::kRegionalIndicator ? ri_run + 1 : 0;
    prev = next;
    pos += d.length;
  }
  boundaries.push_back(text.size());
  return boundaries;
}

std::vector<std::string_view> SplitGraphemes(std::string_view text) {
  const std::vector<std::size_t> bounds = GraphemeBoundaries(text);
  std::vector<std::string_view> out;
  out.reserve(bounds.size());
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    out.push_back(text.substr(bounds[i], bounds[i + 1] - bounds[i]));
  }
  return out;
}

bool IsSingleGrapheme(std::string_view text) {
  if (text.empty()) return false;
  return GraphemeBoundaries(text).size() == 2;
}

}  // namespace emoji_attack::unicode
