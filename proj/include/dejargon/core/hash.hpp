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

#ifndef DEJARGON_CORE_HASH_HPP
#define DEJARGON_CORE_HASH_HPP

#include <openssl/evp.h>

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "dejargon/core/error.hpp"

namespace dejargon {

inline std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0x0F]);
  }
  return out;
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Unbiased draw in [0, bound) by rejection. std::uniform_int_distribution
/// differs between standard libraries; this keeps seeded results portable.
inline std::uint64_t uniform_below(std::mt19937_64& engine, std::uint64_t bound) {
  require(bound > 0, "uniform_below: bound must be positive");
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  std::uint64_t draw = 0;
  do {
    draw = engine();
  } while (draw >= limit);
  return draw % bound;
}

}  // namespace dejargon

#endif  // DEJARGON_CORE_HASH_HPP
