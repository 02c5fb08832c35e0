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

// Convex decomposition of points of the two-matroid intersection polytope and
// randomized swap rounding of such points to a common independent set.

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "matcolor/errors.hpp"
#include "matcolor/intersection.hpp"
#include "matcolor/matroid.hpp"
#include "matcolor/polytope.hpp"
#include "matcolor/rational.hpp"
#include "matcolor/rng.hpp"

namespace matcolor {

/// Weights are positive and sum to 1; every set is common independent.
using ConvexCombination = IndependentCombination;

inline Point combination_point(std::size_t n, const ConvexCombination& comb) {
  Point p(n, Rational(0));
  for (std::size_t i = 0; i < comb.sets.size(); ++i)
    comb.sets[i].for_each([&](Element e) { p[static_cast<std::size_t>(e)] += comb.weights[i]; });
  return p;
}

inline bool is_common_independent(const Matroid& m1, const Matroid& m2, const Subset& s) {
  return is_independent(m1, s) && is_independent(m2, s);
}

namespace detail {

// Pieces (m | S_j) / S_{j-1} of a chain S_1 < ... < S_k inside `ground`,
// plus the remainder m / S_k, as one matroid on `ground`.
class ChainMatroid final : public Matroid {
 public:
  ChainMatroid(MatroidPtr base, Subset ground, const std::vector<Subset>& chain)
      : Matroid(std::move(ground)), base_(std::move(base)) {
    Subset below(universe());
    for (const Subset& s : chain) {
      add_piece(s - below, below);
      below = s;
    }
    add_piece(this->ground() - below, below);
  }

  std::string family() const override { return "chain"; }
  std::vector<Subset> blocks() const override {
    std::vector<Subset> out;
    for (const auto& p : pieces_) out.push_back(p.piece);
    return out;
  }

 protected:
  int do_rank(const Subset& s) const override {
    int r = 0;
    for (const auto& p : pieces_) {
      Subset part = s & p.piece;
      if (!part.empty()) r += base_->rank(part | p.below) - p.below_rank;
    }
    return r;
  }

 private:
  struct Piece {
    Subset piece, below;
    int below_rank;
  };
  void add_piece(Subset piece, const Subset& below) {
    if (piece.empty()) return;
    pieces_.push_back({std::move(piece), below, base_->rank(below)});
  }

  MatroidPtr base_;
  std::vector<Piece> pieces_;
};

// A maximal chain of tight sets of y (y in P(m)) within supp: prefix unions
// of the minimal tight sets ordered by size.
inline std::vector<Subset> tight_chain(const Matroid& m, const Subset& supp, const Point& y) {
  std::vector<Subset> minimal;
  for (const Subset& block : m.blocks()) {
    Subset domain = block & supp;
    if (domain.empty()) continue;
    auto walk = polytope_walk(m, domain, y);
    if (!walk.reached) throw InvariantError("decompose_point: point left the matroid polytope");
    for (auto& r : minimal_tight_sets(m, domain, walk.comb))
      if (r) minimal.push_back(std::move(*r));
  }
  std::sort(minimal.begin(), minimal.end(), [](const Subset& a, const Subset& b) {
    return a.size() != b.size() ? a.size() < b.size() : lex_less(a, b);
  });
  minimal.erase(std::unique(minimal.begin(), minimal.end()), minimal.end());
  std::vector<Subset> chain;
  Subset acc(m.universe());
  for (const Subset& r : minimal) {
    if (r.is_subset_of(acc)) continue;
    acc |= r;
    chain.push_back(acc);
  }
  return chain;
}

// Largest t with v + t d in P(m), starting from an upper bound t.
inline Rational ratio_limit(const Matroid& m, const Subset& v, const Point& d, Rational t) {
  const std::size_t n = m.universe();
  for (int guard = 0;; ++guard) {
    if (guard > 100000) throw InvariantError("decompose_point: ratio test did not converge");
    Point z(n, Rational(0));
    m.ground().for_each([&](Element e) {
      z[e] = (v.contains(e) ? Rational(1) : Rational(0)) + t * d[e];
    });
    auto s = separate_matroid_polytope(m, z);
    if (!s) return t;
    Rational ds = point_sum(d, *s);
    t = (Rational(m.rank(*s)) - Rational(static_cast<long long>(v.intersection_size(*s)))) / ds;
  }
}

}  // namespace detail

/// x as a convex combination of common independent sets, by repeatedly
/// peeling a vertex of the minimal face containing the current point.
inline ConvexCombination decompose_point(const MatroidPtr& m1, const MatroidPtr& m2, const Point& x) {
  require_shared_ground(*m1, *m2);
  check_point(*m1, x);
  if (!in_matroid_polytope(*m1, x) || !in_matroid_polytope(*m2, x))
    throw DomainError("decompose_point: point is not in the intersection polytope");
  const std::size_t n = m1->universe();
  const Subset& ground = m1->ground();
  ConvexCombination out;
  auto record = [&](const Subset& v, const Rational& w) {
    for (std::size_t i = 0; i < out.sets.size(); ++i)
      if (out.sets[i] == v) {
        out.weights[i] += w;
        return;
      }
    out.sets.push_back(v);
    out.weights.push_back(w);
  };
  Rational mass(1);
  Point y(n, Rational(0));
  ground.for_each([&](Element e) { y[e] = x[e]; });
  for (std::size_t iteration = 0;; ++iteration) {
    if (iteration > ground.size() + 1) throw InvariantError("decompose_point: too many peeling steps");
    Subset supp = detail::support(ground, y);
    std::vector<Subset> chain1 = detail::tight_chain(*m1, supp, y);
    std::vector<Subset> chain2 = detail::tight_chain(*m2, supp, y);
    detail::ChainMatroid n1(m1, supp, chain1), n2(m2, supp, chain2);
    std::vector<Rational> w(n, Rational(0));
    if (!chain1.empty()) chain1.back().for_each([&](Element e) { w[e] += 1; });
    if (!chain2.empty()) chain2.back().for_each([&](Element e) { w[e] += 1; });
    Subset v = max_weight_common_independent(n1, n2, w);
    for (const auto* chain : {&chain1, &chain2}) {
      const Matroid& m = chain == &chain1 ? *m1 : *m2;
      for (const Subset& s : *chain)
        if (static_cast<int>(v.intersection_size(s)) != m.rank(s))
          throw InvariantError("decompose_point: vertex misses a tight constraint");
    }
    Point d(n, Rational(0));
    bool at_vertex = true;
    Rational t(-1);
    ground.for_each([&](Element e) {
      d[e] = y[e] - (v.contains(e) ? Rational(1) : Rational(0));
      if (d[e].is_zero()) return;
      at_vertex = false;
      // Keep 0 <= v + t d <= 1 coordinatewise.
      Rational bound = d[e] < Rational(0) ? Rational(1) / -d[e] : Rational(1) / d[e];
      if (t < Rational(0) || bound < t) t = bound;
    });
    if (at_vertex) {
      record(v, mass);
      break;
    }
    t = detail::ratio_limit(*m1, v, d, t);
    t = detail::ratio_limit(*m2, v, d, t);
    if (t <= Rational(1)) throw InvariantError("decompose_point: peeling made no progress");
    record(v, mass * (Rational(1) - Rational(1) / t));
    mass = mass / t;
    ground.for_each([&](Element e) { y[e] = (v.contains(e) ? Rational(1) : Rational(0)) + t * d[e]; });
  }
  Rational total(0);
  for (std::size_t i = 0; i < out.sets.size(); ++i) {
    total += out.weights[i];
    if (out.weights[i] <= Rational(0) || !is_common_independent(*m1, *m2, out.sets[i]))
      throw InvariantError("decompose_point: invalid combination entry");
  }
  Point back = combination_point(n, out);
  bool exact = total == Rational(1);
  ground.for_each([&](Element e) { exact = exact && back[e] == x[e]; });
  if (!exact) throw InvariantError("decompose_point: reconstruction mismatch");
  return out;
}

inline Subset symmetric_difference(const Subset& a, const Subset& b) { return (a - b) | (b - a); }

namespace detail {

// Shortest path in the exchange graph of `base`, using only elements of
// base Δ other, from a source to a sink; at most max_nodes elements.
inline std::optional<Subset> exchange_path(const Matroid& m1, const Matroid& m2, const Subset& base, const Subset& other,
                                           std::size_t max_nodes) {
  ExchangeGraph g = exchange_graph(m1, m2, base);
  const std::size_t n = base.universe();
  Subset allowed = symmetric_difference(base, other);
  Subset entering = other - base;
  std::vector<Element> parent(n, -1);
  std::vector<std::size_t> depth(n, 0);
  std::vector<char> seen(n, 0);
  std::deque<Element> queue;
  (g.sources & entering).for_each([&](Element s) {
    seen[s] = 1;
    depth[s] = 1;
    queue.push_back(s);
  });
  while (!queue.empty()) {
    Element u = queue.front();
    queue.pop_front();
    if (g.sinks.contains(u) && entering.contains(u)) {
      Subset path(n);
      for (Element c = u; c >= 0; c = parent[c]) path.insert(c);
      return path;
    }
    if (depth[u] >= max_nodes) continue;
    for (Element w : g.out[u]) {
      if (seen[w] || !allowed.contains(w)) continue;
      seen[w] = 1;
      parent[w] = u;
      depth[w] = depth[u] + 1;
      queue.push_back(w);
    }
  }
  return std::nullopt;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > (std::uint64_t{1} << 40)) return r;
  }
  return r;
}

}  // namespace detail

/// A nonempty W within i Δ j such that i Δ W and j Δ W are both common
/// independent. Small units are preferred; i Δ j itself always qualifies.
inline Subset find_swap_unit(const Matroid& m1, const Matroid& m2, const Subset& i, const Subset& j) {
  const Subset diff = symmetric_difference(i, j);
  if (diff.empty()) throw ContractError("find_swap_unit: sets are equal");
  const std::vector<Element> elems = diff.elements();
  const std::size_t d = elems.size();
  auto feasible = [&](const Subset& w) {
    return is_common_independent(m1, m2, symmetric_difference(i, w)) &&
           is_common_independent(m1, m2, symmetric_difference(j, w));
  };
  auto try_size = [&](std::size_t k) -> std::optional<Subset> {
    std::vector<std::size_t> idx(k);
    for (std::size_t a = 0; a < k; ++a) idx[a] = a;
    while (true) {
      Subset w(i.universe());
      for (std::size_t a : idx) w.insert(elems[a]);
      if (feasible(w)) return w;
      std::size_t a = k;
      while (a > 0 && idx[a - 1] == d - k + a - 1) --a;
      if (a == 0) return std::nullopt;
      ++idx[a - 1];
      for (std::size_t b = a; b < k; ++b) idx[b] = idx[b - 1] + 1;
    }
  };
  constexpr std::uint64_t kUnitBudget = 250'000;
  for (std::size_t k = 1; k <= std::min<std::size_t>(4, d); ++k) {
    if (detail::binomial(d, k) > kUnitBudget) break;
    if (auto w = try_size(k)) return *w;
  }
  for (const auto& [base, other] : {std::pair{i, j}, std::pair{j, i}}) {
    auto w = detail::exchange_path(m1, m2, base, other, 8);
    if (w && feasible(*w)) return *w;
  }
  if (d <= 10)
    for (std::size_t k = 5; k < d; ++k)
      if (auto w = try_size(k)) return *w;
  return diff;
}

struct MergeOutcome {
  Subset first, second;
  Subset unit;
  bool applied_to_first = false;
};

/// One randomized exchange between i (weight li) and j (weight lj): the unit
/// W is applied to i with probability lj / (li + lj), otherwise to j, so the
/// weighted sum is preserved in expectation and |i Δ j| shrinks.
inline MergeOutcome merge_step(const Matroid& m1, const Matroid& m2, const Subset& i, const Rational& li, const Subset& j,
                               const Rational& lj, Rng& rng) {
  if (li <= Rational(0) || lj <= Rational(0)) throw ContractError("merge_step: weights must be positive");
  if (!is_common_independent(m1, m2, i) || !is_common_independent(m1, m2, j))
    throw ContractError("merge_step: sets must be common independent");
  MergeOutcome out{i, j, find_swap_unit(m1, m2, i, j)};
  out.applied_to_first = rng.bernoulli(lj / (li + lj));
  if (out.applied_to_first) {
    out.first = symmetric_difference(i, out.unit);
  } else {
    out.second = symmetric_difference(j, out.unit);
  }
  return out;
}

struct SwapTranscript {
  std::vector<MergeOutcome> steps;
  Subset merged;  // before thinning
  Subset result;
};

/// Swap rounding of a given decomposition followed by independent thinning:
/// each element of the merged set survives with probability 1 - gamma.
inline Subset swap_round_combination(const Matroid& m1, const Matroid& m2, const ConvexCombination& comb,
                                     const Rational& gamma, Rng& rng, SwapTranscript* transcript = nullptr) {
  if (gamma < Rational(0) || gamma >= Rational(1)) throw DomainError("swap_round: gamma must lie in [0, 1)");
  if (comb.sets.empty()) throw DomainError("swap_round: empty combination");
  struct Entry {
    Subset set;
    Rational weight;
    std::size_t age;
  };
  std::vector<Entry> entries;
  std::size_t age = 0;
  for (std::size_t k = 0; k < comb.sets.size(); ++k) entries.push_back({comb.sets[k], comb.weights[k], age++});
  auto lighter = [](const Entry& a, const Entry& b) { return a.weight != b.weight ? a.weight < b.weight : a.age < b.age; };
  while (entries.size() > 1) {
    std::sort(entries.begin(), entries.end(), lighter);
    Entry a = std::move(entries[0]), b = std::move(entries[1]);
    entries.erase(entries.begin(), entries.begin() + 2);
    Subset i = a.set, j = b.set;
    while (i != j) {
      MergeOutcome step = merge_step(m1, m2, i, a.weight, j, b.weight, rng);
      i = step.first;
      j = step.second;
      if (transcript) transcript->steps.push_back(std::move(step));
    }
    entries.push_back({i, a.weight + b.weight, age++});
  }
  Subset merged = entries.front().set;
  Subset result(merged.universe());
  Rational keep = Rational(1) - gamma;
  merged.for_each([&](Element e) {
    if (rng.bernoulli(keep)) result.insert(e);
  });
  if (transcript) {
    transcript->merged = merged;
    transcript->result = result;
  }
  return result;
}

/// Common independent R with Pr[e in R] = (1 - gamma) alpha for every e.
inline Subset swap_round(const MatroidPtr& m1, const MatroidPtr& m2, const Rational& alpha, const Rational& gamma, Rng& rng,
                         SwapTranscript* transcript = nullptr) {
  if (gamma <= Rational(0) || gamma > Rational(1, 2)) throw DomainError("swap_round: gamma must lie in (0, 1/2]");
  if (alpha < Rational(0)) throw DomainError("swap_round: alpha must be nonnegative");
  Point x(m1->universe(), Rational(0));
  m1->ground().for_each([&](Element e) { x[e] = alpha; });
  return swap_round_combination(*m1, *m2, decompose_point(m1, m2, x), gamma, rng, transcript);
}

}  // namespace matcolor
