// Copyright 2026 phonoq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "phonoq/error.hpp"

namespace phonoq {

// Minimal UTF-8 / UTF-16 handling. Inputs are IPA phone labels and Praat
// TextGrids, so only decoding, encoding and BOM transcoding are needed.

inline std::vector<char32_t> utf8_decode(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const unsigned char b0 = static_cast<unsigned char>(s[i]);
    char32_t cp = 0;
    std::size_t len = 0;
    if (b0 < 0x80) {
      cp = b0;
      len = 1;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      len = 2;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      len = 3;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      len = 4;
    } else {
      throw Error(ErrorKind::ParseError, "invalid UTF-8 lead byte");
    }
    if (i + len > s.size())
      throw Error(ErrorKind::ParseError, "truncated UTF-8 sequence");
    for (std::size_t k = 1; k < len; ++k) {
      const unsigned char b = static_cast<unsigned char>(s[i + k]);
      if ((b & 0xC0) != 0x80)
        throw Error(ErrorKind::ParseError, "invalid UTF-8 continuation byte");
      cp = (cp << 6) | (b & 0x3F);
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

inline void utf8_append(std::string& out, char32_t cp) {
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

inline std::string utf8_encode(const std::vector<char32_t>& cps) {
  std::string out;
  out.reserve(cps.size() * 2);
  for (char32_t cp : cps) utf8_append(out, cp);
  return out;
}

// Strips a UTF-8 BOM or transcodes UTF-16 (with BOM) to UTF-8. Praat writes
// either; MFA emits UTF-8.
inline std::string to_utf8(std::string_view raw) {
  if (raw.size() >= 3 && static_cast<unsigned char>(raw[0]) == 0xEF &&
      static_cast<unsigned char>(raw[1]) == 0xBB &&
      static_cast<unsigned char>(raw[2]) == 0xBF) {
    return std::string(raw.substr(3));
  }
  const bool le = raw.size() >= 2 &&
                  static_cast<unsigned char>(raw[0]) == 0xFF &&
                  static_cast<unsigned char>(raw[1]) == 0xFE;
  const bool be = raw.size() >= 2 &&
                  static_cast<unsigned char>(raw[0]) == 0xFE &&
                  static_cast<unsigned char>(raw[1]) == 0xFF;
  if (!le && !be) return std::string(raw);
  if (raw.size() % 2 != 0)
    throw Error(ErrorKind::FormatError, "odd-length UTF-16 document");
  std::string out;
  out.reserve(raw.size());
  std::size_t i = 2;
  auto unit = [&](std::size_t at) -> char32_t {
    const unsigned char a = static_cast<unsigned char>(raw[at]);
    const unsigned char b = static_cast<unsigned char>(raw[at + 1]);
    return le ? static_cast<char32_t>(a | (b << 8))
              : static_cast<char32_t>((a << 8) | b);
  };
  while (i < raw.size()) {
    char32_t cp = unit(i);
    i += 2;
    if (cp >= 0xD800 && cp <= 0xDBFF) {
      if (i >= raw.size())
        throw Error(ErrorKind::FormatError, "truncated UTF-16 surrogate pair");
      const char32_t lo = unit(i);
      i += 2;
      if (lo < 0xDC00 || lo > 0xDFFF)
        throw Error(ErrorKind::FormatError, "invalid UTF-16 surrogate pair");
      cp = 0x10000 + ((cp - 0xD800) << 10) + (lo - 0xDC00);
    }
    utf8_append(out, cp);
  }
  return out;
}

}  // namespace phonoq
