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

// p-flexible decompositions: a partition T_1..T_l of a set where each part
// is within p - 1 of independent and any union of independent I_j within T_j
// is independent.
//
// A part may carry its own leaf matroid N_j, a minor of M on a superset of
// T_j. Then the witnesses, the rank condition and the sets I_j are taken in
// N_j rather than M. Decompositions read off a refinement tree need this:
// a part below a contraction M/S is only flexible in M/S, and an
// M-independent subset of it can close a circuit with the rest.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "matcolor/enumerate.hpp"
#include "matcolor/matroid.hpp"

namespace matcolor {

struct FlexibleDecomposition {
  int p = 1;
  std::vector<Subset> parts;
  std::vector<Subset> witnesses;  // independent A_j within parts[j]
  std::vector<MatroidPtr> leaves;  // empty, or the matroid of each part

  const Matroid& part_matroid(const Matroid& m, std::size_t j) const { return leaves.empty() ? m : *leaves[j]; }
};

/// Parts with greedy witnesses A_j = greedy_maximal_independent(m, T_j).
inline FlexibleDecomposition make_decomposition(const Matroid& m, int p, std::vector<Subset> parts) {
  FlexibleDecomposition fd;
  fd.p = p;
  for (auto& t : parts) {
    if (t.empty()) continue;
    fd.witnesses.push_back(greedy_maximal_independent(m, t));
    fd.parts.push_back(std::move(t));
  }
  return fd;
}

/// Parts with their own leaf matroids; witnesses are greedy in the leaf.
inline FlexibleDecomposition make_decomposition(int p, std::vector<Subset> parts, std::vector<MatroidPtr> leaves) {
  if (parts.size() != leaves.size()) throw DomainError("make_decomposition: one leaf matroid per part required");
  FlexibleDecomposition fd;
  fd.p = p;
  for (std::size_t j = 0; j < parts.size(); ++j) {
    if (parts[j].empty()) continue;
    fd.witnesses.push_back(greedy_maximal_independent(*leaves[j], parts[j]));
    fd.parts.push_back(std::move(parts[j]));
    fd.leaves.push_back(std::move(leaves[j]));
  }
  return fd;
}

struct FlexCheck {
  bool ok = true;
  std::string failure;
  std::vector<Subset> combination;  // for (c) failures: the independent pieces
  bool exhaustive = false;          // (c) enumerated every combination
  std::uint64_t combinations = 0;
};

struct FlexOptions {
  std::uint64_t exhaustive_budget = 200'000;  // basis combinations
  std::size_t part_limit = 12;                // exhaustive only when parts are this small
  int trials = 1000;
  std::uint64_t seed = 1;
};

namespace detail {

// All bases of t (maximal independent subsets) by enumeration.
inline std::vector<Subset> bases_of(const Matroid& m, const Subset& t) {
  std::vector<Subset> out;
  int r = m.rank(t);
  for_each_subset(t, [&](const Subset& s) {
    if (static_cast<int>(s.size()) == r && is_independent(m, s)) out.push_back(s);
  });
  return out;
}

inline Subset random_independent_subset(const Matroid& m, const Subset& t, std::mt19937_64& rng) {
  std::vector<Element> order = t.elements();
  std::shuffle(order.begin(), order.end(), rng);
  Subset acc(m.universe());
  std::size_t keep = order.empty() ? 0 : rng() % (order.size() + 1);
  for (std::size_t i = 0; i < order.size() && acc.size() < keep; ++i)
    if (is_independent(m, acc.with(order[i]))) acc.insert(order[i]);
  return acc;
}

}  // namespace detail

/// Checks (a) the parts are disjoint, witnesses are independent subsets with
/// |A_j| >= |T_j| - p + 1; (b) rank(T_j) >= |T_j| - p + 1; (c) unions of
/// per-part independent sets are independent in m. Without leaf matroids
/// (c) is decided exactly via r(union T_j) = sum r(T_j). In all cases the
/// union of greedy part bases must be independent, and then all
/// combinations of part bases are enumerated when small (subsets of
/// independent sets are independent, so this covers every combination),
/// otherwise random combinations are tried.
inline FlexCheck validate_flexible(const Matroid& m, const FlexibleDecomposition& fd, const FlexOptions& opts = {}) {
  FlexCheck out;
  auto fail = [&](std::string why) {
    out.ok = false;
    out.failure = std::move(why);
    return out;
  };
  if (fd.p < 1) return fail("p must be positive");
  if (fd.parts.size() != fd.witnesses.size()) return fail("parts and witnesses differ in number");
  if (!fd.leaves.empty() && fd.leaves.size() != fd.parts.size()) return fail("parts and leaf matroids differ in number");
  Subset all(m.universe());
  for (std::size_t j = 0; j < fd.parts.size(); ++j) {
    const Subset& t = fd.parts[j];
    const Subset& a = fd.witnesses[j];
    const Matroid& leaf = fd.part_matroid(m, j);
    std::string tag = "part " + std::to_string(j);
    if (t.universe() != m.universe() || !t.is_subset_of(m.ground())) return fail(tag + " leaves the ground set");
    if (leaf.universe() != m.universe() || !t.is_subset_of(leaf.ground())) return fail(tag + " leaves its leaf matroid");
    if (all.intersects(t)) return fail(tag + " overlaps an earlier part");
    all |= t;
    if (!a.is_subset_of(t)) return fail(tag + ": witness is not inside the part");
    if (!is_independent(leaf, a)) return fail(tag + ": witness is dependent");
    long slack = static_cast<long>(t.size()) - fd.p + 1;
    if (static_cast<long>(a.size()) < slack) return fail(tag + ": witness smaller than |T| - p + 1");
    if (leaf.rank(t) < slack) return fail(tag + ": rank below |T| - p + 1");
    if (m.rank(t) < slack) return fail(tag + ": rank in the matroid below |T| - p + 1");
  }

  int sum = 0;
  Subset joined(m.universe());
  std::vector<Subset> greedy;
  for (std::size_t j = 0; j < fd.parts.size(); ++j) {
    greedy.push_back(greedy_maximal_independent(fd.part_matroid(m, j), fd.parts[j]));
    sum += static_cast<int>(greedy.back().size());
    joined |= greedy.back();
  }
  if ((fd.leaves.empty() ? m.rank(all) : m.rank(joined)) != sum) {
    out.combination = greedy;
    return fail("union of part bases is dependent");
  }

  bool small = true;
  for (const Subset& t : fd.parts) small = small && t.size() <= opts.part_limit;
  std::vector<std::vector<Subset>> bases;
  std::uint64_t product = 1;
  if (small) {
    for (std::size_t j = 0; j < fd.parts.size(); ++j) {
      bases.push_back(detail::bases_of(fd.part_matroid(m, j), fd.parts[j]));
      product = bases.back().size() > opts.exhaustive_budget / product ? opts.exhaustive_budget + 1
                                                                       : product * bases.back().size();
      if (product > opts.exhaustive_budget) break;
    }
  }
  auto check_combination = [&](const std::vector<Subset>& pieces) {
    Subset u(m.universe());
    for (const Subset& s : pieces) u |= s;
    ++out.combinations;
    return is_independent(m, u);
  };
  if (small && product <= opts.exhaustive_budget) {
    out.exhaustive = true;
    std::vector<std::size_t> idx(fd.parts.size(), 0);
    std::vector<Subset> pieces(fd.parts.size());
    while (true) {
      for (std::size_t j = 0; j < idx.size(); ++j) pieces[j] = bases[j][idx[j]];
      if (!check_combination(pieces)) {
        out.combination = pieces;
        return fail("dependent union of per-part independent sets");
      }
      std::size_t j = 0;
      while (j < idx.size() && ++idx[j] == bases[j].size()) idx[j++] = 0;
      if (j == idx.size()) break;
    }
    return out;
  }
  std::mt19937_64 rng(opts.seed);
  for (int trial = 0; trial < opts.trials; ++trial) {
    std::vector<Subset> pieces;
    for (std::size_t j = 0; j < fd.parts.size(); ++j)
      pieces.push_back(detail::random_independent_subset(fd.part_matroid(m, j), fd.parts[j], rng));
    if (!check_combination(pieces)) {
      out.combination = pieces;
      return fail("dependent union of per-part independent sets");
    }
  }
  return out;
}

}  // namespace matcolor
