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

// The LP over a caps-1 partition base polytope intersected with matroid
// polytopes of side matroids:
//
//   max w.x  s.t.  x(P) = 1 for every part P,  x >= 0,
//                  x(S) <= r_i(S) for every side matroid i and S in its ground.
//
// Rank constraints are generated lazily by exact separation, so a basic
// optimum that survives separation is an extreme point of the full polytope.
// (x <= 1 is implied by the part equalities.)

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <ostream>
#include <string>
#include <unordered_set>
#include <vector>

#include "matcolor/polytope.hpp"
#include "matcolor/simplex.hpp"

namespace matcolor {

struct LpMatInstance {
  std::size_t universe = 0;
  std::vector<Subset> parts;         // disjoint; variables are their union
  std::vector<MatroidPtr> side;      // each ground set within the variables
  Point w;                           // objective, indexed by element id
};

struct RankCut {
  int side = 0;
  Subset set;
  int rank = 0;
};

/// Rank cuts per side matroid, reused across solves.
using CutPool = std::vector<std::vector<Subset>>;

struct ExtremePoint {
  Point x;
  Rational value;
  std::vector<RankCut> tight_cuts;  // generated cuts holding with equality
  int separation_rounds = 0;
  int cuts = 0;
  long pivots = 0;
  int exact_rounds = 0;  // rounds solved by the exact simplex
};

struct LpMatResult {
  std::optional<ExtremePoint> point;
  std::string infeasible_reason;
  bool feasible() const { return point.has_value(); }
};

struct LpMatOptions {
  CutPool* pool = nullptr;      // read for initial cuts, extended with new ones
  std::ostream* dump = nullptr; // final working LP in text form
  bool seed_block_cuts = true;  // start with x(B) <= r(B) for every block B
  bool float_guide = true;      // zero objective only: floating-point simplex, exact vertex check
  // Try x = 1 on this set first: it must be independent in every side and
  // meet each part at most once. The rest is solved on the minors, and the
  // full LP is solved instead if that residual is infeasible.
  std::optional<Subset> fixed_ones;
};

namespace detail {

// Solves the listed rows with equality for the columns in `support`, all
// other columns zero. Returns nothing unless the system is consistent and
// determines the support columns uniquely.
inline std::optional<std::vector<Rational>> solve_on_support(const std::vector<SparseRow>& rows, const std::vector<Rational>& rhs,
                                                             const std::vector<int>& tight, const std::vector<int>& support,
                                                             int num_vars) {
  const std::size_t k = support.size();
  std::vector<int> pos(static_cast<std::size_t>(num_vars), -1);
  for (std::size_t c = 0; c < k; ++c) pos[support[c]] = static_cast<int>(c);
  std::vector<std::vector<Rational>> a;
  for (int id : tight) {
    std::vector<Rational> row(k + 1, Rational(0));
    for (const auto& [j, v] : rows[id])
      if (pos[j] >= 0) row[pos[j]] += v;
    row[k] = rhs[id];
    a.push_back(std::move(row));
  }
  std::vector<int> pivot_row(k, -1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < k && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c].is_zero()) ++p;
    if (p == a.size()) return std::nullopt;  // column not determined
    std::swap(a[p], a[r]);
    Rational inv = Rational(1) / a[r][c];
    for (std::size_t j = c; j <= k; ++j)
      if (!a[r][j].is_zero()) a[r][j] *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j <= k; ++j)
        if (!a[r][j].is_zero()) a[i][j] -= f * a[r][j];
    }
    pivot_row[c] = static_cast<int>(r++);
  }
  for (std::size_t c = 0; c < k; ++c)
    if (pivot_row[c] < 0) return std::nullopt;
  for (std::size_t i = r; i < a.size(); ++i)
    if (!a[i][k].is_zero()) return std::nullopt;
  std::vector<Rational> x(static_cast<std::size_t>(num_vars), Rational(0));
  for (std::size_t c = 0; c < k; ++c) x[support[c]] = a[pivot_row[c]][k];
  return x;
}

// Violated flats among the prefixes of each block sorted by x, largest
// first, under a few tie-breaking orders. Cheap and incomplete; the exact
// walk backs it up.
inline std::vector<Subset> greedy_cuts(const Matroid& m, const Point& x, int orders = 4) {
  std::vector<Subset> out;
  for (const Subset& block : m.blocks()) {
    std::vector<Element> base;
    block.for_each([&](Element e) {
      if (x[e].sign() > 0) base.push_back(e);
    });
    std::vector<Subset> found;
    std::mt19937_64 gen(base.size());
    for (int pass = 0; pass < orders; ++pass) {
      std::vector<Element> order = base;
      if (pass > 0) std::shuffle(order.begin(), order.end(), gen);
      std::stable_sort(order.begin(), order.end(), [&](Element a, Element b) { return x[a] > x[b]; });
      Subset prefix(m.universe());
      Rational sum(0);
      int rank = 0;
      for (Element e : order) {
        prefix.insert(e);
        sum += x[e];
        if (m.rank(prefix) > rank) ++rank;
        if (sum > Rational(rank)) {
          Subset flat = closure(m, prefix) & block;
          if (std::find(found.begin(), found.end(), flat) == found.end()) found.push_back(std::move(flat));
        }
      }
    }
    for (auto& f : found) out.push_back(std::move(f));
  }
  return out;
}

}  // namespace detail

inline LpMatResult solve_lp_mat(const LpMatInstance& inst, const LpMatOptions& opts = {}) {
  const std::size_t n = inst.universe;
  Subset vars(n);
  for (const Subset& p : inst.parts) {
    if (p.universe() != n) throw DomainError("solve_lp_mat: part universe mismatch");
    if (vars.intersects(p)) throw DomainError("solve_lp_mat: parts overlap");
    vars |= p;
  }
  for (const auto& m : inst.side) {
    if (m->universe() != n || !m->ground().is_subset_of(vars)) {
      throw DomainError("solve_lp_mat: side matroid ground set is not within the base ground set");
    }
  }
  if (inst.w.size() != n) throw DomainError("solve_lp_mat: objective has wrong length");
  LpMatResult result;
  for (const Subset& p : inst.parts) {
    if (p.empty()) {
      result.infeasible_reason = "a part of the base matroid is empty, so its base polytope is empty";
      return result;
    }
  }

  if (opts.fixed_ones && !opts.fixed_ones->empty()) {
    const Subset& one = *opts.fixed_ones;
    if (!one.is_subset_of(vars)) throw DomainError("solve_lp_mat: fixed ones outside the variables");
    LpMatInstance rest{n, {}, {}, inst.w};
    Subset zero(n);
    for (const Subset& p : inst.parts) {
      Subset hit = p & one;
      if (hit.size() > 1) throw DomainError("solve_lp_mat: fixed ones meet a part twice");
      if (hit.empty()) rest.parts.push_back(p);
      else zero |= p - hit;
    }
    for (const auto& m : inst.side) {
      Subset in = one & m->ground();
      if (!is_independent(*m, in)) throw DomainError("solve_lp_mat: fixed ones dependent in a side");
      rest.side.push_back(minor(m, in, zero & m->ground()));
    }
    // Coordinates at 0 or 1 cannot split, so a vertex of the residual plus
    // the fixed ones is a vertex here.
    LpMatOptions sub = opts;
    sub.fixed_ones.reset();
    sub.pool = nullptr;
    sub.dump = nullptr;
    LpMatResult r = solve_lp_mat(rest, sub);
    if (r.feasible()) {
      ExtremePoint& ep = *r.point;
      one.for_each([&](Element e) {
        ep.x[e] = Rational(1);
        ep.value += inst.w[e];
      });
      for (RankCut& cut : ep.tight_cuts) {
        Subset in = one & inst.side[cut.side]->ground();
        cut.set |= in;
        cut.rank += static_cast<int>(in.size());
      }
      return r;
    }
  }

  std::vector<Element> col_elem = vars.elements();
  std::vector<int> col_of(n, -1);
  for (std::size_t j = 0; j < col_elem.size(); ++j) col_of[col_elem[j]] = static_cast<int>(j);
  std::vector<Rational> c;
  for (Element e : col_elem) c.push_back(inst.w[e]);
  const std::vector<Rational> c_copy = c;
  ExactSimplex lp(static_cast<int>(col_elem.size()), std::move(c));

  auto row_of = [&](const Subset& s) {
    SparseRow r;
    s.for_each([&](Element e) { r.emplace_back(col_of[e], Rational(1)); });
    return r;
  };
  for (std::size_t k = 0; k < inst.parts.size(); ++k) {
    lp.add_row(row_of(inst.parts[k]), RowSense::kEqual, Rational(1), "part" + std::to_string(k));
  }

  CutPool local(inst.side.size());
  CutPool& pool = opts.pool ? *opts.pool : local;
  pool.resize(inst.side.size());
  std::vector<RankCut> cuts;
  std::vector<std::unordered_set<Subset, SubsetHash>> seen(inst.side.size());
  std::function<void(int)> on_row;
  auto add_cut = [&](int i, const Subset& s) {
    if (!seen[i].insert(s).second) return false;
    int r = inst.side[i]->rank(s);
    if (static_cast<int>(s.size()) <= r) return false;
    lp.add_row(row_of(s), RowSense::kLessEqual, Rational(r), "side" + std::to_string(i));
    if (on_row) on_row(lp.num_rows() - 1);
    cuts.push_back({i, s, r});
    return true;
  };
  for (std::size_t i = 0; i < inst.side.size(); ++i) {
    for (const Subset& s : pool[i]) {
      if (s.is_subset_of(inst.side[i]->ground())) add_cut(static_cast<int>(i), s);
    }
    if (opts.seed_block_cuts) {
      for (const Subset& b : inst.side[i]->blocks()) add_cut(static_cast<int>(i), b);
    }
  }

  bool guided = opts.float_guide;
  for (const Rational& v : c_copy) guided = guided && v.is_zero();
  std::optional<FloatSimplex> flp;
  flp.emplace(static_cast<int>(col_elem.size()), c_copy);
  const long float_limit = 20L * static_cast<long>(col_elem.size() + 64);
  flp->set_pivot_limit(float_limit);
  std::vector<SparseRow> rows;
  std::vector<Rational> rhs;
  std::vector<bool> equality;
  for (int id = 0; id < lp.num_rows(); ++id) {
    rows.push_back(lp.row(id));
    rhs.push_back(lp.rhs(id));
    equality.push_back(lp.sense(id) == RowSense::kEqual);
    if (guided) flp->add_row(lp.row(id), lp.sense(id), lp.rhs(id));
  }

  on_row = [&](int id) {
    rows.push_back(lp.row(id));
    rhs.push_back(lp.rhs(id));
    equality.push_back(false);
    if (guided) flp->add_row(lp.row(id), RowSense::kLessEqual, lp.rhs(id));
  };

  // A vertex of the float relaxation rebuilt exactly: tight rows solved on
  // the support. Full column rank there makes it a vertex of the exact
  // relaxation once it is checked feasible.
  auto float_point = [&]() -> std::optional<std::vector<Rational>> {
    if (flp->solve() != LpStatus::kOptimal) return std::nullopt;
    std::vector<double> xf = flp->solution();
    std::vector<int> support, tight;
    for (int j = 0; j < static_cast<int>(xf.size()); ++j)
      if (xf[j] > 1e-7) support.push_back(j);
    for (int id = 0; id < static_cast<int>(rows.size()); ++id) {
      double act = flp->activity(id, xf);
      if (equality[id] || std::abs(act - rhs[id].to_double()) <= 1e-7) tight.push_back(id);
    }
    auto x = detail::solve_on_support(rows, rhs, tight, support, static_cast<int>(xf.size()));
    if (!x) return std::nullopt;
    for (const Rational& v : *x)
      if (v.sign() < 0) return std::nullopt;
    for (int id = 0; id < static_cast<int>(rows.size()); ++id) {
      Rational act(0);
      for (const auto& [j, v] : rows[id]) act += v * (*x)[j];
      if (equality[id] ? act != rhs[id] : act > rhs[id]) return std::nullopt;
    }
    return x;
  };

  // The warm-started float tableau drifts; one cold rebuild before giving up.
  long float_pivots = 0;
  auto guided_point = [&]() -> std::optional<std::vector<Rational>> {
    if (auto x = float_point()) return x;
    float_pivots += flp->pivots();
    flp.emplace(static_cast<int>(col_elem.size()), c_copy);
    flp->set_pivot_limit(float_limit);
    for (std::size_t id = 0; id < rows.size(); ++id)
      flp->add_row(rows[id], equality[id] ? RowSense::kEqual : RowSense::kLessEqual, rhs[id]);
    return float_point();
  };

  ExtremePoint ep;
  while (true) {
    std::optional<std::vector<Rational>> sol;
    if (guided) {
      sol = guided_point();
      if (!sol) guided = false;
    }
    if (!sol) {
      LpStatus st = lp.solve();
      ++ep.exact_rounds;
      if (st == LpStatus::kInfeasible) {
        result.infeasible_reason = "the working relaxation with " + std::to_string(cuts.size()) +
                                   " rank cuts has no feasible point";
        if (opts.dump) lp.dump(*opts.dump);
        return result;
      }
      if (st == LpStatus::kUnbounded) throw InvariantError("solve_lp_mat: bounded LP reported unbounded");
      sol = lp.solution();
    }
    ++ep.separation_rounds;
    Point x(n, Rational(0));
    for (std::size_t j = 0; j < col_elem.size(); ++j) x[col_elem[j]] = (*sol)[j];
    bool added = false;
    for (std::size_t i = 0; i < inst.side.size(); ++i) {
      for (const Subset& s : detail::greedy_cuts(*inst.side[i], x)) {
        if (add_cut(static_cast<int>(i), s)) {
          pool[i].push_back(s);
          added = true;
        }
      }
    }
    for (std::size_t i = 0; i < inst.side.size() && !added; ++i) {
      for (const Subset& s : separate_blocks(*inst.side[i], x)) {
        if (add_cut(static_cast<int>(i), s)) {
          pool[i].push_back(s);
          added = true;
        } else {
          throw InvariantError("solve_lp_mat: separation returned a cut already in the LP");
        }
      }
    }
    if (!added) {
      ep.x = std::move(x);
      break;
    }
  }
  ep.value = Rational(0);
  for (std::size_t e = 0; e < ep.x.size(); ++e)
    if (!ep.x[e].is_zero()) ep.value += inst.w[e] * ep.x[e];
  ep.cuts = static_cast<int>(cuts.size());
  ep.pivots = lp.pivots() + float_pivots + flp->pivots();
  for (const RankCut& cut : cuts) {
    if (point_sum(ep.x, cut.set) == Rational(cut.rank)) ep.tight_cuts.push_back(cut);
  }
  if (opts.dump) lp.dump(*opts.dump);
  result.point = std::move(ep);
  return result;
}

}  // namespace matcolor
