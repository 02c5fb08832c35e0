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

// Membership, separation and tight sets for the matroid polytope
// P(M) = {x >= 0 : x(S) <= r(S) for all S}.
//
// The exact routines express min(x, P(M)) as a convex combination of
// independent sets by augmenting along exchange paths. When the walk stalls,
// the elements reachable from unsaturated coordinates form the unique
// smallest maximizer of x(S) - r(S). When it reaches x, the minimal tight set
// containing e is the closure of {e} under fundamental circuits of the sets
// in the combination. Exhaustive versions are kept for cross-checking.

#include <algorithm>
#include <deque>
#include <optional>
#include <vector>

#include "matcolor/enumerate.hpp"
#include "matcolor/matroid.hpp"
#include "matcolor/rational.hpp"

namespace matcolor {

using Point = std::vector<Rational>;

inline Rational point_sum(const Point& x, const Subset& s) {
  Rational total(0);
  s.for_each([&](Element e) { total += x[static_cast<std::size_t>(e)]; });
  return total;
}

inline void check_point(const Matroid& m, const Point& x) {
  if (x.size() != m.universe()) throw DomainError("polytope: point has wrong dimension");
  m.ground().for_each([&](Element e) {
    if (x[static_cast<std::size_t>(e)] < Rational(0)) throw DomainError("polytope: negative coordinate");
  });
}

/// sum_i weights[i] * 1_{sets[i]}; weights positive and summing to 1.
struct IndependentCombination {
  std::vector<Subset> sets;
  std::vector<Rational> weights;
};

namespace detail {

// Drops sets until at most |domain| + 1 remain, keeping the weighted sum
// and total weight unchanged.
inline void caratheodory_reduce(IndependentCombination& comb, const std::vector<Element>& domain) {
  while (comb.sets.size() > domain.size() + 1) {
    // Columns are sets; rows are the domain coordinates plus a row of ones.
    const std::size_t cols = comb.sets.size();
    const std::size_t rows = domain.size() + 1;
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols, Rational(0)));
    for (std::size_t c = 0; c < cols; ++c) {
      for (std::size_t r = 0; r < domain.size(); ++r)
        if (comb.sets[c].contains(domain[r])) a[r][c] = Rational(1);
      a[domain.size()][c] = Rational(1);
    }
    // Reduced row echelon form; the first free column gives a null vector.
    std::vector<int> pivot_col;
    std::size_t row = 0;
    std::size_t free_col = cols;
    for (std::size_t c = 0; c < cols && free_col == cols; ++c) {
      std::size_t p = row;
      while (p < rows && a[p][c].is_zero()) ++p;
      if (p == rows) {
        free_col = c;
        break;
      }
      std::swap(a[p], a[row]);
      Rational inv = Rational(1) / a[row][c];
      for (auto& v : a[row]) v *= inv;
      for (std::size_t r = 0; r < rows; ++r) {
        if (r == row || a[r][c].is_zero()) continue;
        Rational f = a[r][c];
        for (std::size_t k = c; k < cols; ++k)
          if (!a[row][k].is_zero()) a[r][k] -= f * a[row][k];
      }
      pivot_col.push_back(static_cast<int>(c));
      ++row;
    }
    if (free_col == cols) throw InvariantError("caratheodory_reduce: no dependency among too many sets");
    std::vector<Rational> mu(cols, Rational(0));
    mu[free_col] = Rational(1);
    for (std::size_t r = 0; r < pivot_col.size(); ++r) mu[pivot_col[r]] = -a[r][free_col];
    // Move along -mu until a weight hits zero.
    std::optional<Rational> theta;
    for (std::size_t c = 0; c < cols; ++c) {
      if (mu[c] > Rational(0)) {
        Rational t = comb.weights[c] / mu[c];
        if (!theta || t < *theta) theta = t;
      }
    }
    IndependentCombination next;
    for (std::size_t c = 0; c < cols; ++c) {
      Rational w = comb.weights[c] - *theta * mu[c];
      if (w > Rational(0)) {
        next.sets.push_back(std::move(comb.sets[c]));
        next.weights.push_back(std::move(w));
      }
    }
    comb = std::move(next);
  }
}

struct WalkResult {
  IndependentCombination comb;
  Subset stalled;  // reachable set when y != x at the end; empty otherwise
  bool reached = false;
};

// Grows y = sum of weights * sets toward x on `domain`, keeping y <= x and y
// in P(m). Starts from the empty set with weight 1.
inline WalkResult polytope_walk(const Matroid& m, const Subset& domain, const Point& x) {
  const std::size_t n = m.universe();
  std::vector<Element> elems = domain.elements();
  WalkResult out;
  out.comb.sets.push_back(Subset(n));
  out.comb.weights.push_back(Rational(1));
  std::vector<Rational> y(n, Rational(0));
  auto& sets = out.comb.sets;
  auto& lambda = out.comb.weights;

  for (long iteration = 0;; ++iteration) {
    if (iteration > 2'000'000) throw InvariantError("polytope_walk: no convergence");
    std::vector<Element> parent(n, -1);
    std::vector<int> label(n, -1);
    Subset seen(n);
    std::deque<Element> queue;
    for (Element e : elems) {
      if (y[e] < x[e]) {
        seen.insert(e);
        queue.push_back(e);
      }
    }
    if (queue.empty()) {
      out.reached = true;
      out.stalled = Subset(n);
      return out;
    }
    Element end = -1;
    int sink_set = -1;
    while (!queue.empty() && end < 0) {
      Element u = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < sets.size(); ++i) {
        const Subset& s = sets[i];
        if (s.contains(u)) continue;
        if (m.rank(s.with(u)) > static_cast<int>(s.size())) {
          end = u;
          sink_set = static_cast<int>(i);
          break;
        }
        fundamental_circuit(m, s, u).for_each([&](Element w) {
          if (w == u || seen.contains(w)) return;
          seen.insert(w);
          parent[w] = u;
          label[w] = static_cast<int>(i);
          queue.push_back(w);
        });
      }
    }
    if (end < 0) {
      out.stalled = seen;
      return out;
    }

    // Path v0 -> ... -> end; arc (parent[w] -> w) with label i swaps w out of
    // set i and parent[w] in. The end element joins sink_set.
    std::vector<Element> path;
    for (Element v = end; v >= 0; v = parent[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    Element start = path.front();
    Rational delta = x[start] - y[start];
    std::vector<int> used;
    auto use = [&](int i) {
      if (std::find(used.begin(), used.end(), i) == used.end()) used.push_back(i);
    };
    for (std::size_t t = 1; t < path.size(); ++t) use(label[path[t]]);
    use(sink_set);
    for (int i : used) delta = min(delta, lambda[i]);

    std::vector<Subset> modified;
    for (int i : used) {
      Subset s = sets[i];
      for (std::size_t t = 1; t < path.size(); ++t) {
        if (label[path[t]] == i) {
          s.erase(path[t]);
          s.insert(path[t - 1]);
        }
      }
      if (i == sink_set) s.insert(end);
      if (!is_independent(m, s)) throw InvariantError("polytope_walk: exchange produced a dependent set");
      modified.push_back(std::move(s));
    }
    for (std::size_t k = 0; k < used.size(); ++k) {
      int i = used[k];
      if (lambda[i] == delta) {
        sets[i] = std::move(modified[k]);
      } else {
        lambda[i] -= delta;
        sets.push_back(std::move(modified[k]));
        lambda.push_back(delta);
      }
    }
    y[start] += delta;
    detail::caratheodory_reduce(out.comb, elems);
  }
}

// Minimal tight set containing each element, for x = sum of the
// combination. Empty optional marks elements in no tight set.
inline std::vector<std::optional<Subset>> minimal_tight_sets(const Matroid& m, const Subset& domain,
                                                             const IndependentCombination& comb) {
  const std::size_t n = m.universe();
  const auto& sets = comb.sets;
  // circuit[i][e]: fundamental circuit of e in set i; nullopt when e can be
  // added to set i (then e lies in no tight set).
  std::vector<std::vector<std::optional<Subset>>> circuit(sets.size(), std::vector<std::optional<Subset>>(n));
  std::vector<bool> addable(n, false);
  domain.for_each([&](Element e) {
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (sets[i].contains(e)) continue;
      if (m.rank(sets[i].with(e)) > static_cast<int>(sets[i].size())) {
        addable[e] = true;
      } else {
        circuit[i][e] = fundamental_circuit(m, sets[i], e);
      }
    }
  });
  std::vector<std::optional<Subset>> out(n);
  domain.for_each([&](Element e) {
    Subset closure_set(n);
    closure_set.insert(e);
    std::deque<Element> queue{e};
    bool ok = !addable[e];
    while (ok && !queue.empty()) {
      Element u = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < sets.size() && ok; ++i) {
        if (!circuit[i][u]) continue;
        circuit[i][u]->for_each([&](Element w) {
          if (closure_set.contains(w)) return;
          if (addable[w]) ok = false;
          closure_set.insert(w);
          queue.push_back(w);
        });
      }
    }
    if (ok) out[e] = std::move(closure_set);
  });
  return out;
}

inline Subset support(const Subset& within, const Point& x) {
  Subset s(within.universe());
  within.for_each([&](Element e) {
    if (!x[static_cast<std::size_t>(e)].is_zero()) s.insert(e);
  });
  return s;
}

}  // namespace detail

/// Violated rank constraints of x, one per direct-sum block that has one.
/// Each is the smallest maximizer of x(S) - r(S) within its block.
inline std::vector<Subset> separate_blocks(const Matroid& m, const Point& x) {
  check_point(m, x);
  std::vector<Subset> out;
  for (const Subset& block : m.blocks()) {
    Subset domain = detail::support(block, x);
    if (domain.empty()) continue;
    auto walk = detail::polytope_walk(m, domain, x);
    if (!walk.reached) out.push_back(std::move(walk.stalled));
  }
  return out;
}

/// The most violated rank constraint of x (smallest among ties), or none
/// when x lies in P(m).
inline std::optional<Subset> separate_matroid_polytope(const Matroid& m, const Point& x) {
  auto parts = separate_blocks(m, x);
  if (parts.empty()) return std::nullopt;
  Subset s(m.universe());
  for (const auto& p : parts) s |= p;
  return s;
}

inline bool in_matroid_polytope(const Matroid& m, const Point& x) { return separate_blocks(m, x).empty(); }

/// x as a convex combination of independent sets of m; x must lie in P(m).
inline IndependentCombination decompose_in_polytope(const Matroid& m, const Point& x) {
  check_point(m, x);
  auto walk = detail::polytope_walk(m, m.ground(), x);
  if (!walk.reached) throw DomainError("decompose_in_polytope: point lies outside the matroid polytope");
  return std::move(walk.comb);
}

namespace detail {

inline std::optional<Subset> tight_set_brute_force(const Matroid& m, const Point& x, std::size_t limit) {
  std::optional<Subset> best;
  for_each_subset(
      m.ground(),
      [&](const Subset& s) {
        if (s.empty() || s == m.ground()) return;
        if (point_sum(x, s) != Rational(m.rank(s))) return;
        if (!best || s.size() < best->size() || (s.size() == best->size() && lex_less(s, *best))) best = s;
      },
      limit);
  return best;
}

}  // namespace detail

/// Smallest proper nonempty S with x(S) = r(S); ties go to the
/// lexicographically smallest. Points outside P(m) fall back to exhaustive
/// search.
inline std::optional<Subset> find_tight_set(const Matroid& m, const Point& x, std::size_t limit = kBruteForceLimit) {
  check_point(m, x);
  std::optional<Subset> best;
  for (const Subset& block : m.blocks()) {
    auto walk = detail::polytope_walk(m, block, x);
    if (!walk.reached) return detail::tight_set_brute_force(m, x, limit);
    for (auto& r : detail::minimal_tight_sets(m, block, walk.comb)) {
      if (!r || *r == m.ground()) continue;
      if (!best || r->size() < best->size() || (r->size() == best->size() && lex_less(*r, *best))) best = std::move(r);
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Exhaustive oracles

/// Smallest most-violated S by enumeration over all subsets.
inline std::optional<Subset> separate_brute_force(const Matroid& m, const Point& x, std::size_t limit = kBruteForceLimit) {
  check_point(m, x);
  std::optional<Subset> best;
  Rational best_gap(0);
  for_each_subset(
      m.ground(),
      [&](const Subset& s) {
        Rational gap = point_sum(x, s) - Rational(m.rank(s));
        if (gap <= Rational(0)) return;
        if (!best || gap > best_gap ||
            (gap == best_gap && (s.size() < best->size() || (s.size() == best->size() && lex_less(s, *best))))) {
          best = s;
          best_gap = gap;
        }
      },
      limit);
  return best;
}

inline std::optional<Subset> find_tight_set_brute_force(const Matroid& m, const Point& x,
                                                        std::size_t limit = kBruteForceLimit) {
  check_point(m, x);
  return detail::tight_set_brute_force(m, x, limit);
}

}  // namespace matcolor
