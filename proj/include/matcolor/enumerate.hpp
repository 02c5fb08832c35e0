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

// Exhaustive enumeration helpers for brute-force oracles.

#include <cstdint>
#include <vector>

#include "matcolor/errors.hpp"
#include "matcolor/subset.hpp"

namespace matcolor {

/// Subset of `base` selected by the bits of mask (bit i picks the i-th
/// smallest element of base).
inline Subset subset_from_mask(const std::vector<Element>& elems, std::size_t universe, std::uint64_t mask) {
  Subset s(universe);
  for (std::size_t i = 0; mask; ++i, mask >>= 1)
    if (mask & 1) s.insert(elems[i]);
  return s;
}

/// Calls f(subset) for every subset of base, empty set first, in mask order.
/// Refuses bases larger than limit.
template <typename F>
void for_each_subset(const Subset& base, F&& f, std::size_t limit = kBruteForceLimit) {
  require_brute_force_size(base.size(), limit, "subset enumeration");
  std::vector<Element> elems = base.elements();
  std::uint64_t total = std::uint64_t{1} << elems.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) f(subset_from_mask(elems, base.universe(), mask));
}

}  // namespace matcolor
