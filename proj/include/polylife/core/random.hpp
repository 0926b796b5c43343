// Copyright 2026 The polylife Authors.
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

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace polylife {

using Rng = std::mt19937_64;

// Derives an independent stream seed from a base seed and a list of tags
// (sequence id, policy id, ...). Streams never share state.
inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags) {
  std::vector<std::uint32_t> words;
  words.reserve(2 + 2 * tags.size());
  words.push_back(static_cast<std::uint32_t>(base));
  words.push_back(static_cast<std::uint32_t>(base >> 32));
  for (auto t : tags) {
    words.push_back(static_cast<std::uint32_t>(t));
    words.push_back(static_cast<std::uint32_t>(t >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  std::uint32_t raw[2];
  seq.generate(raw, raw + 2);
  return (static_cast<std::uint64_t>(raw[1]) << 32) | raw[0];
}

inline Rng make_rng(std::uint64_t base, std::initializer_list<std::uint64_t> tags = {}) {
  return Rng(derive_seed(base, tags));
}

// Stream tags used across the library.
namespace stream {
inline constexpr std::uint64_t kEnvironment = 0x454e56;
inline constexpr std::uint64_t kPolicy = 0x504f4c;
inline constexpr std::uint64_t kSelector = 0x53454c;
inline constexpr std::uint64_t kSequence = 0x534551;
inline constexpr std::uint64_t kAssignment = 0x415353;
inline constexpr std::uint64_t kSpread = 0x535052;
}  // namespace stream

inline int uniform_index(Rng& rng, int n) {
  return std::uniform_int_distribution<int>(0, n - 1)(rng);
}

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline bool bernoulli(Rng& rng, double p) {
  return uniform01(rng) < p;
}

}  // namespace polylife
