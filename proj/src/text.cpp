// Copyright 2026 tsgen contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tsgen/text.hpp"

#include <algorithm>
#include <array>
#include <cstdint>

#include "tsgen/error.hpp"

namespace tsgen {
namespace {

struct CpRange {
  char32_t lo;
  char32_t hi;
};

// Code point ranges of Unicode general category P* (Unicode 13.0).
constexpr CpRange kPunctRanges[] = {
    {0x00021, 0x00023}, {0x00025, 0x0002A}, {0x0002C, 0x0002F}, {0x0003A, 0x0003B},
    {0x0003F, 0x00040}, {0x0005B, 0x0005D}, {0x0005F, 0x0005F}, {0x0007B, 0x0007B},
    {0x0007D, 0x0007D}, {0x000A1, 0x000A1}, {0x000A7, 0x000A7}, {0x000AB, 0x000AB},
    {0x000B6, 0x000B7}, {0x000BB, 0x000BB}, {0x000BF, 0x000BF}, {0x0037E, 0x0037E},
    {0x00387, 0x00387}, {0x0055A, 0x0055F}, {0x00589, 0x0058A}, {0x005BE, 0x005BE},
    {0x005C0, 0x005C0}, {0x005C3, 0x005C3}, {0x005C6, 0x005C6}, {0x005F3, 0x005F4},
    {0x00609, 0x0060A}, {0x0060C, 0x0060D}, {0x0061B, 0x0061B}, {0x0061E, 0x0061F},
    {0x0066A, 0x0066D}, {0x006D4, 0x006D4}, {0x00700, 0x0070D}, {0x007F7, 0x007F9},
    {0x00830, 0x0083E}, {0x0085E, 0x0085E}, {0x00964, 0x00965}, {0x00970, 0x00970},
    {0x009FD, 0x009FD}, {0x00A76, 0x00A76}, {0x00AF0, 0x00AF0}, {0x00C77, 0x00C77},
    {0x00C84, 0x00C84}, {0x00DF4, 0x00DF4}, {0x00E4F, 0x00E4F}, {0x00E5A, 0x00E5B},
    {0x00F04, 0x00F12}, {0x00F14, 0x00F14}, {0x00F3A, 0x00F3D}, {0x00F85, 0x00F85},
    {0x00FD0, 0x00FD4}, {0x00FD9, 0x00FDA}, {0x0104A, 0x0104F}, {0x010FB, 0x010FB},
    {0x01360, 0x01368}, {0x01400, 0x01400}, {0x0166E, 0x0166E}, {0x0169B, 0x0169C},
    {0x016EB, 0x016ED}, {0x01735, 0x01736}, {0x017D4, 0x017D6}, {0x017D8, 0x017DA},
    {0x01800, 0x0180A}, {0x01944, 0x01945}, {0x01A1E, 0x01A1F}, {0x01AA0, 0x01AA6},
    {0x01AA8, 0x01AAD}, {0x01B5A, 0x01B60}, {0x01BFC, 0x01BFF}, {0x01C3B, 0x01C3F},
    {0x01C7E, 0x01C7F}, {0x01CC0, 0x01CC7}, {0x01CD3, 0x01CD3}, {0x02010, 0x02027},
    {0x02030, 0x02043}, {0x02045, 0x02051}, {0x02053, 0x0205E}, {0x0207D, 0x0207E},
    {0x0208D, 0x0208E}, {0x02308, 0x0230B}, {0x02329, 0x0232A}, {0x02768, 0x02775},
    {0x027C5, 0x027C6}, {0x027E6, 0x027EF}, {0x02983, 0x02998}, {0x029D8, 0x029DB},
    {0x029FC, 0x029FD}, {0x02CF9, 0x02CFC}, {0x02CFE, 0x02CFF}, {0x02D70, 0x02D70},
    {0x02E00, 0x02E2E}, {0x02E30, 0x02E4F}, {0x02E52, 0x02E52}, {0x03001, 0x03003},
    {0x03008, 0x03011}, {0x03014, 0x0301F}, {0x03030, 0x03030}, {0x0303D, 0x0303D},
    {0x030A0, 0x030A0}, {0x030FB, 0x030FB}, {0x0A4FE, 0x0A4FF}, {0x0A60D, 0x0A60F},
    {0x0A673, 0x0A673}, {0x0A67E, 0x0A67E}, {0x0A6F2, 0x0A6F7}, {0x0A874, 0x0A877},
    {0x0A8CE, 0x0A8CF}, {0x0A8F8, 0x0A8FA}, {0x0A8FC, 0x0A8FC}, {0x0A92E, 0x0A92F},
    {0x0A95F, 0x0A95F}, {0x0A9C1, 0x0A9CD}, {0x0A9DE, 0x0A9DF}, {0x0AA5C, 0x0AA5F},
    {0x0AADE, 0x0AADF}, {0x0AAF0, 0x0AAF1}, {0x0ABEB, 0x0ABEB}, {0x0FD3E, 0x0FD3F},
    {0x0FE10, 0x0FE19}, {0x0FE30, 0x0FE52}, {0x0FE54, 0x0FE61}, {0x0FE63, 0x0FE63},
    {0x0FE68, 0x0FE68}, {0x0FE6A, 0x0FE6B}, {0x0FF01, 0x0FF03}, {0x0FF05, 0x0FF0A},
    {0x0FF0C, 0x0FF0F}, {0x0FF1A, 0x0FF1B}, {0x0FF1F, 0x0FF20}, {0x0FF3B, 0x0FF3D},
    {0x0FF3F, 0x0FF3F}, {0x0FF5B, 0x0FF5B}, {0x0FF5D, 0x0FF5D}, {0x0FF5F, 0x0FF65},
    {0x10100, 0x10102}, {0x1039F, 0x1039F}, {0x103D0, 0x103D0}, {0x1056F, 0x1056F},
    {0x10857, 0x10857}, {0x1091F, 0x1091F}, {0x1093F, 0x1093F}, {0x10A50, 0x10A58},
    {0x10A7F, 0x10A7F}, {0x10AF0, 0x10AF6}, {0x10B39, 0x10B3F}, {0x10B99, 0x10B9C},
    {0x10EAD, 0x10EAD}, {0x10F55, 0x10F59}, {0x11047, 0x1104D}, {0x110BB, 0x110BC},
    {0x110BE, 0x110C1}, {0x11140, 0x11143}, {0x11174, 0x11175}, {0x111C5, 0x111C8},
    {0x111CD, 0x111CD}, {0x111DB, 0x111DB}, {0x111DD, 0x111DF}, {0x11238, 0x1123D},
    {0x112A9, 0x112A9}, {0x1144B, 0x1144F}, {0x1145A, 0x1145B}, {0x1145D, 0x1145D},
    {0x114C6, 0x114C6}, {0x115C1, 0x115D7}, {0x11641, 0x11643}, {0x11660, 0x1166C},
    {0x1173C, 0x1173E}, {0x1183B, 0x1183B}, {0x11944, 0x11946}, {0x119E2, 0x119E2},
    {0x11A3F, 0x11A46}, {0x11A9A, 0x11A9C}, {0x11A9E, 0x11AA2}, {0x11C41, 0x11C45},
    {0x11C70, 0x11C71}, {0x11EF7, 0x11EF8}, {0x11FFF, 0x11FFF}, {0x12470, 0x12474},
    {0x16A6E, 0x16A6F}, {0x16AF5, 0x16AF5}, {0x16B37, 0x16B3B}, {0x16B44, 0x16B44},
    {0x16E97, 0x16E9A}, {0x16FE2, 0x16FE2}, {0x1BC9F, 0x1BC9F}, {0x1DA87, 0x1DA8B},
    {0x1E95E, 0x1E95F},
};

// White_Space property code points.
constexpr CpRange kSpaceRanges[] = {
    {0x0009, 0x000D}, {0x0020, 0x0020}, {0x0085, 0x0085}, {0x00A0, 0x00A0},
    {0x1680, 0x1680}, {0x2000, 0x200A}, {0x2028, 0x2029}, {0x202F, 0x202F},
    {0x205F, 0x205F}, {0x3000, 0x3000},
};

template <size_t N>
bool in_ranges(const CpRange (&ranges)[N], char32_t cp) {
  auto it = std::upper_bound(
      std::begin(ranges), std::end(ranges), cp,
      [](char32_t v, const CpRange& r) { return v < r.lo; });
  return it != std::begin(ranges) && cp <= std::prev(it)->hi;
}

[[noreturn]] void bad_utf8(size_t offset) {
  throw Error(ErrorKind::kEncoding,
              "invalid UTF-8 at byte offset " + std::to_string(offset));
}

// Decodes one code point starting at text[i]; advances i past it.
char32_t decode_utf8(std::string_view text, size_t& i) {
  const auto byte = [&](size_t k) { return static_cast<uint8_t>(text[k]); };
  const uint8_t b0 = byte(i);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  int len;
  char32_t cp;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    bad_utf8(i);
  }
  if (i + len > text.size()) bad_utf8(i);
  for (int k = 1; k < len; ++k) {
    const uint8_t b = byte(i + k);
    if ((b & 0xC0) != 0x80) bad_utf8(i);
    cp = (cp << 6) | (b & 0x3F);
  }
  // Reject overlong encodings and out-of-range values.
  static constexpr char32_t kMinForLen[5] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMinForLen[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
    bad_utf8(i);
  i += len;
  return cp;
}

}  // namespace

bool is_punct_codepoint(char32_t cp) { return in_ranges(kPunctRanges, cp); }

bool is_space_codepoint(char32_t cp) { return in_ranges(kSpaceRanges, cp); }

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  size_t i = 0;
  while (i < text.size()) {
    const size_t start = i;
    const char32_t cp = decode_utf8(text, i);
    if (is_space_codepoint(cp)) {
      if (!current.empty()) {
        tokens.push_back(std::move(current));
        current.clear();
      }
    } else if (is_punct_codepoint(cp)) {
      if (!current.empty()) {
        tokens.push_back(std::move(current));
        current.clear();
      }
      tokens.emplace_back(text.substr(start, i - start));
    } else {
      current.append(text.substr(start, i - start));
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (size_t k = 0; k < tokens.size(); ++k) {
    if (k) out.push_back(' ');
    out += tokens[k];
  }
  return out;
}

std::vector<std::string> split_tokens(std::string_view field) {
  std::vector<std::string> tokens;
  if (field.empty()) return tokens;
  size_t pos = 0;
  for (;;) {
    const size_t sp = field.find(' ', pos);
    std::string_view tok = field.substr(pos, sp == std::string_view::npos
                                                 ? std::string_view::npos
                                                 : sp - pos);
    if (tok.empty())
      throw Error(ErrorKind::kBadToken, "empty token in field");
    tokens.emplace_back(tok);
    if (sp == std::string_view::npos) break;
    pos = sp + 1;
  }
  return tokens;
}

}  // namespace tsgen
