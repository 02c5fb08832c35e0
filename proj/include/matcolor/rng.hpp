// Copyright 2026 The Authors.
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

// Seeded randomness with platform-independent draws: std::mt19937_64 is fully
// specified, but the standard distributions are not, so sampling is done here.

#include <cstdint>
#include <random>

#include "matcolor/rational.hpp"

namespace matcolor {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent stream seed for (master, a, b).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
  return splitmix64(splitmix64(splitmix64(master) ^ a) ^ (b * 0xd1b54a32d192ed03ULL));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, n), n > 0, by rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do v = engine_();
    while (v >= limit);
    return v % n;
  }

  /// True with probability p, clamped to [0, 1]. Exact when p has a 64-bit
  /// denominator; otherwise p is rounded down to a multiple of 2^-62.
  bool bernoulli(const Rational& p) {
    if (p <= Rational(0)) return false;
    if (p >= Rational(1)) return true;
    if (p.is_small()) return below(static_cast<std::uint64_t>(p.small_den())) < static_cast<std::uint64_t>(p.small_num());
    constexpr std::int64_t kLattice = std::int64_t{1} << 62;
    Rational scaled = p * Rational(kLattice);
    return below(static_cast<std::uint64_t>(kLattice)) < static_cast<std::uint64_t>(scaled.floor().small_num());
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace matcolor
