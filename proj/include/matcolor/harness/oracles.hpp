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

// Exhaustive oracles for small instances: the exact chromatic number of a
// matroid intersection and the optimum of its covering LP.

#include <cstdint>
#include <string>
#include <vector>

#include "matcolor/errors.hpp"
#include "matcolor/matroid.hpp"
#include "matcolor/rational.hpp"
#include "matcolor/simplex.hpp"

namespace matcolor::harness {

namespace detail {

struct MaskTable {
  std::vector<Element> elems;  // bit i is elems[i]
  std::vector<char> independent;

  Subset subset(std::uint32_t mask, std::size_t universe) const {
    Subset s(universe);
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (mask >> i & 1) s.insert(elems[i]);
    return s;
  }
};

inline MaskTable common_independent_masks(const std::vector<MatroidPtr>& ms, std::size_t budget, const char* who) {
  if (ms.empty()) throw DomainError(std::string(who) + ": no matroids");
  MaskTable t;
  t.elems = ms.front()->ground().elements();
  const std::size_t n = t.elems.size();
  if (n > budget)
    throw Refusal(std::string(who) + ": " + std::to_string(n) + " elements exceed the budget of " + std::to_string(budget));
  const std::size_t universe = ms.front()->universe();
  t.independent.assign(std::size_t{1} << n, 0);
  t.independent[0] = 1;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::uint32_t high = 1u << (31 - __builtin_clz(mask));
    if (!t.independent[mask ^ high]) continue;
    Subset s = t.subset(mask, universe);
    bool ok = true;
    for (const auto& m : ms) ok = ok && m->rank(s) == static_cast<int>(s.size());
    t.independent[mask] = ok;
  }
  return t;
}

}  // namespace detail

/// Exact chromatic number of the intersection: fewest common independent
/// sets partitioning the ground set, by dynamic programming over subsets.
inline int brute_chi_intersection(const std::vector<MatroidPtr>& ms, std::size_t budget = 14) {
  detail::MaskTable t = detail::common_independent_masks(ms, budget, "brute_chi_intersection");
  const std::uint32_t full = (1u << t.elems.size()) - 1;
  constexpr int kInf = 1 << 20;
  std::vector<int> best(full + 1, kInf);
  best[0] = 0;
  for (std::uint32_t s = 1; s <= full; ++s) {
    std::uint32_t low = s & -s;
    std::uint32_t rest = s ^ low;
    // Classes containing the lowest element of s: low plus a submask of rest.
    for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
      std::uint32_t cls = sub | low;
      if (t.independent[cls] && best[s ^ cls] + 1 < best[s]) best[s] = best[s ^ cls] + 1;
      if (sub == 0) break;
    }
    if (best[s] >= kInf) throw DomainError("brute_chi_intersection: an element is a loop");
  }
  return best[full];
}

/// The same number by iterative deepening: tries q = 1, 2, ... and places
/// elements from the highest bit down into at most q classes.
inline int brute_chi_deepening(const std::vector<MatroidPtr>& ms, std::size_t budget = 14) {
  detail::MaskTable t = detail::common_independent_masks(ms, budget, "brute_chi_deepening");
  const int n = static_cast<int>(t.elems.size());
  if (n == 0) return 0;
  std::vector<std::uint32_t> classes;
  auto place = [&](auto& self, int bit, int q) -> bool {
    if (bit < 0) return true;
    for (std::size_t c = 0; c < classes.size(); ++c) {
      std::uint32_t grown = classes[c] | (1u << bit);
      if (!t.independent[grown]) continue;
      std::uint32_t old = classes[c];
      classes[c] = grown;
      if (self(self, bit - 1, q)) return true;
      classes[c] = old;
    }
    if (static_cast<int>(classes.size()) < q && t.independent[1u << bit]) {
      classes.push_back(1u << bit);
      if (self(self, bit - 1, q)) return true;
      classes.pop_back();
    }
    return false;
  };
  for (int q = 1; q <= n; ++q) {
    classes.clear();
    if (place(place, n - 1, q)) return q;
  }
  throw DomainError("brute_chi_deepening: an element is a loop");
}

/// Maximal common independent sets, each as a subset.
inline std::vector<Subset> maximal_common_independent_sets(const std::vector<MatroidPtr>& ms, std::size_t budget = 12) {
  detail::MaskTable t = detail::common_independent_masks(ms, budget, "maximal_common_independent_sets");
  const std::size_t n = t.elems.size();
  std::vector<Subset> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (!t.independent[mask]) continue;
    bool maximal = true;
    for (std::size_t i = 0; i < n && maximal; ++i)
      if (!(mask >> i & 1) && t.independent[mask | (1u << i)]) maximal = false;
    if (maximal) out.push_back(t.subset(mask, ms.front()->universe()));
  }
  return out;
}

/// Optimum of the covering LP  min sum x_I  s.t.  sum_{I ni e} x_I >= 1,
/// computed as its dual packing LP over the maximal common independent sets.
inline Rational covlp_opt(const std::vector<MatroidPtr>& ms, std::size_t budget = 12) {
  std::vector<Subset> sets = maximal_common_independent_sets(ms, budget);
  std::vector<Element> elems = ms.front()->ground().elements();
  if (elems.empty()) return Rational(0);
  std::vector<int> column(ms.front()->universe(), -1);
  for (std::size_t j = 0; j < elems.size(); ++j) column[elems[j]] = static_cast<int>(j);
  ExactSimplex lp(static_cast<int>(elems.size()), std::vector<Rational>(elems.size(), Rational(1)));
  for (const Subset& s : sets) {
    SparseRow row;
    s.for_each([&](Element e) { row.emplace_back(column[e], Rational(1)); });
    lp.add_row(std::move(row), RowSense::kLessEqual, Rational(1));
  }
  if (lp.solve() != LpStatus::kOptimal) throw DomainError("covlp_opt: an element is a loop");
  return lp.value();
}

}  // namespace matcolor::harness
