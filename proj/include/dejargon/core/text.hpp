// Copyright 2026 The Dejargon Authors.
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

// Small UTF-8 aware string helpers shared by the text-processing modules.
// Offsets everywhere in the library are byte offsets into UTF-8 strings.

#ifndef DEJARGON_CORE_TEXT_HPP
#define DEJARGON_CORE_TEXT_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dejargon::text {

inline bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_ascii_space(s[b])) ++b;
  while (e > b && is_ascii_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

inline std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

inline bool iequals_ascii(std::string_view a, std::string_view b) {
  return a.size() == b.size() && to_lower_ascii(a) == to_lower_ascii(b);
}

inline bool icontains_ascii(std::string_view haystack, std::string_view needle) {
  return to_lower_ascii(haystack).find(to_lower_ascii(needle)) != std::string::npos;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

/// Splits on runs of ASCII whitespace; never yields empty pieces.
inline std::vector<std::string> split_whitespace(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_ascii_space(s[i])) ++i;
    const std::size_t start = i;
    while (i < s.size() && !is_ascii_space(s[i])) ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

inline std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

inline std::string collapse_whitespace(std::string_view s) {
  return join(split_whitespace(s), " ");
}

/// Length in bytes of the UTF-8 sequence introduced by `lead`; 1 for
/// malformed lead bytes so callers always make progress.
inline std::size_t utf8_sequence_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead & 0xE0) == 0xC0) return 2;
  if ((lead & 0xF0) == 0xE0) return 3;
  if ((lead & 0xF8) == 0xF0) return 4;
  return 1;
}

/// Byte offset of every code point start, plus a final entry equal to s.size().
inline std::vector<std::size_t> code_point_offsets(std::string_view s) {
  std::vector<std::size_t> offsets;
  offsets.reserve(s.size() + 1);
  std::size_t i = 0;
  while (i < s.size()) {
    offsets.push_back(i);
    i += std::min(utf8_sequence_length(static_cast<unsigned char>(s[i])), s.size() - i);
  }
  offsets.push_back(s.size());
  return offsets;
}

inline char32_t decode_at(std::string_view s, std::size_t i, std::size_t len) {
  const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[i + k]); };
  switch (len) {
    case 2:
      return static_cast<char32_t>(((byte(0) & 0x1F) << 6) | (byte(1) & 0x3F));
    case 3:
      return static_cast<char32_t>(((byte(0) & 0x0F) << 12) | ((byte(1) & 0x3F) << 6) |
                                   (byte(2) & 0x3F));
    case 4:
      return static_cast<char32_t>(((byte(0) & 0x07) << 18) | ((byte(1) & 0x3F) << 12) |
                                   ((byte(2) & 0x3F) << 6) | (byte(3) & 0x3F));
    default:
      return static_cast<char32_t>(byte(0));
  }
}

inline bool is_punctuation(char32_t cp) {
  if (cp < 0x80) {
    const char c = static_cast<char>(cp);
    return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') || (c >= '[' && c <= '`') ||
           (c >= '{' && c <= '~');
  }
  switch (cp) {
    case 0x00A1: case 0x00AB: case 0x00BB: case 0x00BF:
    case 0x2010: case 0x2011: case 0x2012: case 0x2013: case 0x2014: case 0x2015:
    case 0x2018: case 0x2019: case 0x201A: case 0x201B:
    case 0x201C: case 0x201D: case 0x201E: case 0x201F:
    case 0x2020: case 0x2021: case 0x2022: case 0x2026:
    case 0x2032: case 0x2033: case 0x2039: case 0x203A:
    case 0x3001: case 0x3002: case 0x300C: case 0x300D:
      return true;
    default:
      return false;
  }
}

/// Strips leading and trailing punctuation (ASCII and common Unicode quotes,
/// dashes, ellipses). Interior characters are untouched.
inline std::string_view strip_punctuation(std::string_view s) {
  std::size_t begin = 0;
  while (begin < s.size()) {
    const std::size_t len =
        std::min(utf8_sequence_length(static_cast<unsigned char>(s[begin])), s.size() - begin);
    if (!is_punctuation(decode_at(s, begin, len))) break;
    begin += len;
  }
  std::size_t end = s.size();
  while (end > begin) {
    std::size_t start = end - 1;
    while (start > begin && (static_cast<unsigned char>(s[start]) & 0xC0) == 0x80) --start;
    if (!is_punctuation(decode_at(s, start, end - start))) break;
    end = start;
  }
  return s.substr(begin, end - begin);
}

inline bool starts_with_icase(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && iequals_ascii(s.substr(0, prefix.size()), prefix);
}

}  // namespace dejargon::text

#endif  // DEJARGON_CORE_TEXT_HPP
