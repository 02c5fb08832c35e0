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

// Iterative refinement over the LP_mat relaxation, the coloring instance
// built from q copies of the ground set, and the resulting pseudocolorings.
//
// Each side matroid is tracked through a tree of minors. Refining M along a
// tight set S gives children M|S and M/S; contracting picked elements S of M
// gives a free leaf on S and the child M/S; a matroid dropped because
// |U| <= r(U) + p - 1 is a leaf. Intersecting the picked set R with the leaf
// ground sets yields a p-flexible decomposition of R within that side.

#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "matcolor/flexible.hpp"
#include "matcolor/intersection.hpp"
#include "matcolor/lp_mat.hpp"
#include "matcolor/matroid_union.hpp"

namespace matcolor {

enum class NodeKind { kInner, kActive, kFreeLeaf, kDroppedLeaf, kEmptiedLeaf };

struct TreeNode {
  int parent = -1;
  std::vector<int> children;
  NodeKind kind = NodeKind::kActive;
  MatroidPtr matroid;  // latest matroid of this node (deletions update it)
  Subset ground;       // ground set when the node was closed or last updated
  std::string origin;  // root | restrict | contract-rest | contracted | refine-rest
};

struct RefinementTree {
  int input = 0;
  std::vector<TreeNode> nodes;

  /// R intersected with the ground set of every leaf, empties dropped.
  std::vector<Subset> leaf_parts(const Subset& r) const {
    std::vector<Subset> out;
    for (int id : leaves(r)) out.push_back(nodes[id].ground & r);
    return out;
  }
  /// Leaf matroids matching leaf_parts(r).
  std::vector<MatroidPtr> leaf_matroids(const Subset& r) const {
    std::vector<MatroidPtr> out;
    for (int id : leaves(r)) out.push_back(nodes[id].matroid);
    return out;
  }

 private:
  std::vector<int> leaves(const Subset& r) const {
    std::vector<int> out;
    for (std::size_t id = 0; id < nodes.size(); ++id) {
      const TreeNode& node = nodes[id];
      if (node.kind == NodeKind::kInner || node.kind == NodeKind::kActive) continue;
      if (node.ground.intersects(r)) out.push_back(static_cast<int>(id));
    }
    return out;
  }
};

struct SideInput {
  MatroidPtr matroid;  // its ground set is the side's sub-ground-set
  int p = 1;
};

struct LoszOptions {
  std::function<void(const std::string&)> trace;
  const GroundSet* labels = nullptr;  // names used in trace lines
  bool check_invariants = false;      // re-verify the previous LP point after every update
  std::optional<Subset> first_ones;   // passed to the first LP solve as fixed ones
  // pseudocoloring of two matroids: fill first_ones with greedy common bases
  // once the LP has at least this many variables
  std::optional<std::size_t> warm_start_vars = 200;
};

struct LoszResult {
  Subset picked;
  std::vector<RefinementTree> trees;
  int lp_solves = 0;
  int refinements = 0;
  int drops = 0;
};

namespace detail {

inline std::string element_name(const LoszOptions& opts, Element e) {
  return opts.labels ? opts.labels->label(e) : std::to_string(e);
}

inline std::string format_set(const LoszOptions& opts, const Subset& s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](Element e) {
    out += (first ? "" : ",") + element_name(opts, e);
    first = false;
  });
  return out + "}";
}

inline std::string format_point(const LoszOptions& opts, const Point& x, const Subset& live) {
  std::string out;
  live.for_each([&](Element e) {
    if (x[e].is_zero()) return;
    if (!out.empty()) out += ' ';
    out += element_name(opts, e) + "=" + x[e].to_string();
  });
  return out;
}

}  // namespace detail

/// Runs iterative refinement on the caps-1 partition `parts` and the side
/// matroids. Requires sum over sides containing e of 1/p_i <= 1 for every e,
/// and a feasible LP.
inline LoszResult losz_run(std::vector<Subset> parts, const std::vector<SideInput>& sides, const Point& w,
                           const LoszOptions& opts = {}) {
  if (parts.empty() && sides.empty()) return {};
  const std::size_t n = !parts.empty() ? parts.front().universe() : sides.front().matroid->universe();
  // Hypothesis of the refinement theorem.
  for (std::size_t e = 0; e < n; ++e) {
    Rational load(0);
    for (const auto& s : sides) {
      if (s.p < 1) throw DomainError("losz_run: p must be positive");
      if (s.matroid->ground().contains(static_cast<Element>(e))) load += Rational(1, s.p);
    }
    if (load > Rational(1)) throw DomainError("losz_run: sum of 1/p over sides containing an element exceeds 1");
  }
  auto trace = [&](const std::string& line) {
    if (opts.trace) opts.trace(line);
  };

  struct Entry {
    MatroidPtr m;
    int p;
    int input;
    int node;
  };
  LoszResult result;
  result.picked = Subset(n);
  std::vector<Entry> registry;
  CutPool pool;
  for (std::size_t i = 0; i < sides.size(); ++i) {
    RefinementTree tree;
    tree.input = static_cast<int>(i);
    tree.nodes.push_back({-1, {}, NodeKind::kActive, sides[i].matroid, sides[i].matroid->ground(), "root"});
    result.trees.push_back(std::move(tree));
    registry.push_back({sides[i].matroid, sides[i].p, static_cast<int>(i), 0});
    pool.emplace_back();
  }
  auto node_of = [&](const Entry& e) -> TreeNode& { return result.trees[e.input].nodes[e.node]; };
  auto add_child = [&](const Entry& parent, MatroidPtr m, NodeKind kind, Subset ground, std::string origin) {
    auto& nodes = result.trees[parent.input].nodes;
    nodes.push_back({parent.node, {}, kind, std::move(m), std::move(ground), std::move(origin)});
    int id = static_cast<int>(nodes.size()) - 1;
    nodes[parent.node].children.push_back(id);
    nodes[parent.node].kind = NodeKind::kInner;
    return id;
  };
  auto live_ground = [&]() {
    Subset g(n);
    for (const Subset& p : parts) g |= p;
    return g;
  };
  auto project_pool = [](std::vector<Subset>& cuts, const Subset& keep) {
    std::vector<Subset> out;
    for (const Subset& c : cuts) {
      Subset s = c & keep;
      if (s.size() > 1) out.push_back(std::move(s));
    }
    cuts = std::move(out);
  };

  const std::size_t max_iterations = 4 * n + 4 * sides.size() + 16;
  std::optional<Point> previous;
  for (std::size_t iteration = 0;; ++iteration) {
    if (iteration > max_iterations) throw InvariantError("losz_run: no progress");
    LpMatInstance inst{n, parts, {}, w};
    for (const Entry& e : registry) inst.side.push_back(e.m);
    if (opts.check_invariants && previous) {
      // The last point restricted to survivors stays feasible.
      Point x = *previous;
      for (const Subset& p : parts)
        if (point_sum(x, p) != Rational(1)) throw InvariantError("losz_run: previous point violates a part equality");
      for (const Entry& e : registry)
        if (!in_matroid_polytope(*e.m, x)) throw InvariantError("losz_run: previous point left a side polytope");
    }
    LpMatOptions lp_opts;
    lp_opts.pool = &pool;
    if (iteration == 0) lp_opts.fixed_ones = opts.first_ones;
    LpMatResult solved = solve_lp_mat(inst, lp_opts);
    ++result.lp_solves;
    if (!solved.feasible()) {
      if (iteration == 0) throw DomainError("losz_run: LP is infeasible: " + solved.infeasible_reason);
      throw InvariantError("losz_run: LP became infeasible after an update: " + solved.infeasible_reason);
    }
    Point x = solved.point->x;
    Subset live = live_ground();
    trace("solve " + std::to_string(result.lp_solves) + ": value=" + solved.point->value.to_string() +
          " cuts=" + std::to_string(solved.point->cuts) + " x*: " + detail::format_point(opts, x, live));

    Subset zeros(n), ones(n);
    live.for_each([&](Element e) {
      if (x[e].is_zero()) zeros.insert(e);
      if (x[e] == Rational(1)) ones.insert(e);
    });
    zeros.for_each([&](Element e) { trace("delete " + detail::element_name(opts, e)); });
    for (Subset& p : parts) p -= zeros;
    for (std::size_t k = 0; k < registry.size(); ++k) {
      Entry& e = registry[k];
      Subset d = zeros & e.m->ground();
      if (d.empty()) continue;
      e.m = deletion(e.m, d);
      node_of(e).matroid = e.m;
      node_of(e).ground = e.m->ground();
      project_pool(pool[k], e.m->ground());
    }

    ones.for_each([&](Element e) { trace("contract " + detail::element_name(opts, e)); });
    result.picked |= ones;
    {
      std::vector<Subset> kept;
      for (Subset& p : parts) {
        if (p.intersects(ones)) {
          if (!(p - ones).empty()) throw InvariantError("losz_run: contracted element shares a part with a live element");
          continue;
        }
        kept.push_back(std::move(p));
      }
      parts = std::move(kept);
    }
    std::vector<Entry> next;
    CutPool next_pool;
    for (std::size_t k = 0; k < registry.size(); ++k) {
      Entry e = registry[k];
      Subset s = ones & e.m->ground();
      if (s.empty()) {
        if (e.m->ground().empty()) {
          node_of(e).kind = NodeKind::kEmptiedLeaf;
          continue;
        }
        next.push_back(e);
        next_pool.push_back(std::move(pool[k]));
        continue;
      }
      add_child(e, std::make_shared<FreeMatroid>(s), NodeKind::kFreeLeaf, s, "contracted");
      if (s == e.m->ground()) continue;
      MatroidPtr rest = contraction(e.m, s);
      int id = add_child(e, rest, NodeKind::kActive, rest->ground(), "contract-rest");
      next.push_back({rest, e.p, e.input, id});
      project_pool(pool[k], rest->ground());
      next_pool.push_back(std::move(pool[k]));
    }
    registry = std::move(next);
    pool = std::move(next_pool);

    if (parts.empty()) {
      trace("done: picked " + std::to_string(result.picked.size()) + " elements");
      for (const Entry& e : registry) node_of(e).kind = NodeKind::kDroppedLeaf;
      return result;
    }

    // Refine along tight sets; entries before the cursor are known to have
    // none at this point.
    for (std::size_t k = 0; k < registry.size();) {
      auto tight = find_tight_set(*registry[k].m, x);
      if (!tight) {
        ++k;
        continue;
      }
      Entry e = registry[k];
      ++result.refinements;
      trace("refine side " + std::to_string(e.input) + " along " + detail::format_set(opts, *tight));
      MatroidPtr inside = restriction(e.m, *tight);
      MatroidPtr outside = contraction(e.m, *tight);
      int a = add_child(e, inside, NodeKind::kActive, inside->ground(), "restrict");
      int b = add_child(e, outside, NodeKind::kActive, outside->ground(), "refine-rest");
      std::vector<Subset> in_cuts = pool[k], out_cuts = pool[k];
      project_pool(in_cuts, inside->ground());
      project_pool(out_cuts, outside->ground());
      registry[k] = {inside, e.p, e.input, a};
      registry.insert(registry.begin() + static_cast<long>(k) + 1, Entry{outside, e.p, e.input, b});
      pool[k] = std::move(in_cuts);
      pool.insert(pool.begin() + static_cast<long>(k) + 1, std::move(out_cuts));
    }

    int drop = -1;
    for (std::size_t k = 0; k < registry.size(); ++k) {
      const Matroid& m = *registry[k].m;
      if (static_cast<int>(m.size()) > m.full_rank() + registry[k].p - 1) continue;
      if (drop < 0 || m.size() < registry[drop].m->size()) drop = static_cast<int>(k);
    }
    if (drop < 0) {
      throw InvariantError("losz_run: no side matroid can be dropped at x* = " + detail::format_point(opts, x, live_ground()));
    }
    Entry gone = registry[drop];
    node_of(gone).kind = NodeKind::kDroppedLeaf;
    node_of(gone).ground = gone.m->ground();
    ++result.drops;
    trace("drop side " + std::to_string(gone.input) + " on " + detail::format_set(opts, gone.m->ground()));
    registry.erase(registry.begin() + drop);
    pool.erase(pool.begin() + drop);
    previous = std::move(x);
  }
}

// ---------------------------------------------------------------------------
// Coloring reduction

/// Ground set of q disjoint copies of U; copy c of element e has id c * n + e
/// and label "label#c".
struct ColoringInstance {
  std::size_t n = 0;
  int q = 0;
  std::vector<Subset> parts;  // copies of each live element
  std::vector<SideInput> sides;
  GroundSet labels;

  Element copy_of(Element e, int c) const { return static_cast<Element>(static_cast<std::size_t>(c) * n + e); }
  std::pair<Element, int> original(Element id) const {
    return {static_cast<Element>(static_cast<std::size_t>(id) % n), static_cast<int>(static_cast<std::size_t>(id) / n)};
  }
  /// Elements of copy c in s, as a subset of U.
  Subset slice(const Subset& s, int c) const {
    Subset out(n);
    s.for_each([&](Element id) {
      auto [e, copy] = original(id);
      if (copy == c) out.insert(e);
    });
    return out;
  }
};

inline ColoringInstance build_coloring_instance(const std::vector<MatroidPtr>& ms, int q, const GroundSet* base_labels = nullptr,
                                                int p = -1) {
  if (q < 1) throw DomainError("build_coloring_instance: q must be positive");
  if (ms.empty()) throw DomainError("build_coloring_instance: no matroids");
  ColoringInstance ci;
  ci.n = ms.front()->universe();
  ci.q = q;
  for (const auto& m : ms) {
    if (m->universe() != ci.n || m->ground() != ms.front()->ground())
      throw DomainError("build_coloring_instance: matroids have different ground sets");
  }
  std::vector<std::string> labels;
  for (int c = 0; c < q; ++c) {
    for (std::size_t e = 0; e < ci.n; ++e) {
      std::string base = base_labels ? base_labels->label(static_cast<Element>(e)) : std::to_string(e);
      labels.push_back(base + "#" + std::to_string(c));
    }
  }
  ci.labels = GroundSet(std::move(labels));
  ms.front()->ground().for_each([&](Element e) {
    Subset part(ci.n * static_cast<std::size_t>(q));
    for (int c = 0; c < q; ++c) part.insert(ci.copy_of(e, c));
    ci.parts.push_back(std::move(part));
  });
  int pk = p > 0 ? p : static_cast<int>(ms.size());
  for (const auto& m : ms) ci.sides.push_back({q_copies(m, q), pk});
  return ci;
}

/// Copy c of a matroid on the coloring ground set, viewed on U.
class CopySliceMatroid final : public Matroid {
 public:
  CopySliceMatroid(MatroidPtr base, const ColoringInstance& ci, int c)
      : Matroid(ci.slice(base->ground(), c)), base_(std::move(base)), n_(ci.n), c_(c) {}
  std::string family() const override { return "copy-slice"; }

 protected:
  int do_rank(const Subset& s) const override {
    Subset lifted(base_->universe());
    s.for_each([&](Element e) { lifted.insert(static_cast<Element>(static_cast<std::size_t>(c_) * n_ + e)); });
    return base_->rank(lifted);
  }

 private:
  MatroidPtr base_;
  std::size_t n_;
  int c_;
};

/// q classes partitioning U; decompositions[c][i] is a p-flexible
/// decomposition of classes[c] in matroid i.
struct Pseudocoloring {
  int p = 1;
  int q = 0;
  std::vector<Subset> classes;
  std::vector<std::vector<FlexibleDecomposition>> decompositions;
};

inline int chi_max(const std::vector<MatroidPtr>& ms) {
  int q = 0;
  for (const auto& m : ms) q = std::max(q, chromatic_number(*m).first);
  return q;
}

namespace detail {

// Common bases of the two matroids on the uncovered elements, one color at a
// time, while the uniform point on what is left fits the remaining colors.
// Returned as copies in the coloring LP.
inline Subset greedy_common_bases(const std::vector<MatroidPtr>& ms, const ColoringInstance& ci) {
  Subset fixed(ci.n * static_cast<std::size_t>(ci.q));
  Subset left = ms[0]->ground();
  for (int c = 0; c < ci.q && !left.empty(); ++c) {
    Subset out = ms[0]->ground() - left;
    Subset b = max_common_independent(*deletion(ms[0], out), *deletion(ms[1], out));
    if (b.empty()) break;
    Subset rest = left - b;
    const int colors = ci.q - c - 1;
    if (colors == 0 && !rest.empty()) break;
    if (colors > 0) {
      Point u(ci.n, Rational(0));
      rest.for_each([&](Element e) { u[e] = Rational(1, colors); });
      if (!in_matroid_polytope(*ms[0], u) || !in_matroid_polytope(*ms[1], u)) break;
    }
    b.for_each([&](Element e) { fixed.insert(ci.copy_of(e, c)); });
    left = std::move(rest);
  }
  return fixed;
}

}  // namespace detail

/// A (k, chi_max)-pseudocoloring of k matroids on a shared ground set.
inline Pseudocoloring pseudocoloring(const std::vector<MatroidPtr>& ms, const LoszOptions& opts = {},
                                     const GroundSet* base_labels = nullptr, std::optional<int> q_override = std::nullopt) {
  if (ms.empty()) throw DomainError("pseudocoloring: no matroids");
  Pseudocoloring pc;
  pc.p = static_cast<int>(ms.size());
  pc.q = q_override ? *q_override : chi_max(ms);
  if (pc.q == 0) return pc;
  ColoringInstance ci = build_coloring_instance(ms, pc.q, base_labels);
  LoszOptions run_opts = opts;
  if (!run_opts.labels) run_opts.labels = &ci.labels;
  if (!run_opts.first_ones && ms.size() == 2 && opts.warm_start_vars &&
      ci.n * static_cast<std::size_t>(pc.q) >= *opts.warm_start_vars) {
    run_opts.first_ones = detail::greedy_common_bases(ms, ci);
  }
  Point w(ci.n * static_cast<std::size_t>(pc.q), Rational(0));
  LoszResult run = losz_run(ci.parts, ci.sides, w, run_opts);
  for (int c = 0; c < pc.q; ++c) pc.classes.push_back(ci.slice(run.picked, c));
  pc.decompositions.assign(static_cast<std::size_t>(pc.q), {});
  for (std::size_t i = 0; i < ms.size(); ++i) {
    std::vector<Subset> leaves = run.trees[i].leaf_parts(run.picked);
    std::vector<MatroidPtr> minors = run.trees[i].leaf_matroids(run.picked);
    for (int c = 0; c < pc.q; ++c) {
      std::vector<Subset> parts;
      std::vector<MatroidPtr> slices;
      for (std::size_t j = 0; j < leaves.size(); ++j) {
        parts.push_back(ci.slice(leaves[j], c));
        slices.push_back(std::make_shared<CopySliceMatroid>(minors[j], ci, c));
      }
      pc.decompositions[c].push_back(make_decomposition(pc.p, std::move(parts), std::move(slices)));
    }
  }
  return pc;
}

}  // namespace matcolor
