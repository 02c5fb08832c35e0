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

// Conflict graphs of pseudocolor classes and the graph colorings that turn a
// (k, q)-pseudocoloring into a proper coloring of the matroid intersection.

#include <algorithm>
#include <deque>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "matcolor/errors.hpp"
#include "matcolor/flexible.hpp"
#include "matcolor/losz.hpp"
#include "matcolor/matroid.hpp"

namespace matcolor {

using Coloring = std::vector<Subset>;

/// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : adj_(static_cast<std::size_t>(n)) {}

  static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Graph g(n);
    for (auto [a, b] : edges) {
      if (a == b || a < 0 || b < 0 || a >= n || b >= n) throw DomainError("Graph: bad edge");
      g.adj_[a].push_back(b);
      g.adj_[b].push_back(a);
    }
    for (auto& list : g.adj_) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    return g;
  }

  int size() const { return static_cast<int>(adj_.size()); }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  bool adjacent(int a, int b) const { return std::binary_search(adj_[a].begin(), adj_[a].end(), b); }

  int max_degree() const {
    int d = 0;
    for (const auto& list : adj_) d = std::max(d, static_cast<int>(list.size()));
    return d;
  }
  std::size_t num_edges() const {
    std::size_t m = 0;
    for (const auto& list : adj_) m += list.size();
    return m / 2;
  }
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < size(); ++a)
      for (int b : adj_[a])
        if (a < b) out.emplace_back(a, b);
    return out;
  }
  bool is_complete() const {
    for (const auto& list : adj_)
      if (static_cast<int>(list.size()) != size() - 1) return false;
    return true;
  }

  /// Subgraph induced by verts; vertex i of the result is verts[i].
  Graph induced(const std::vector<int>& verts) const {
    std::vector<int> index(adj_.size(), -1);
    for (std::size_t i = 0; i < verts.size(); ++i) index[verts[i]] = static_cast<int>(i);
    Graph h(static_cast<int>(verts.size()));
    for (std::size_t i = 0; i < verts.size(); ++i)
      for (int b : adj_[verts[i]])
        if (index[b] >= 0) h.adj_[i].push_back(index[b]);
    for (auto& list : h.adj_) std::sort(list.begin(), list.end());
    return h;
  }

 private:
  std::vector<std::vector<int>> adj_;
};

struct GraphColoring {
  std::vector<int> color;  // color[v] in [0, colors)
  int colors = 0;
};

inline bool is_proper(const Graph& g, const GraphColoring& c) {
  if (static_cast<int>(c.color.size()) != g.size()) return false;
  for (int v = 0; v < g.size(); ++v) {
    if (c.color[v] < 0 || c.color[v] >= c.colors) return false;
    for (int u : g.neighbors(v))
      if (c.color[u] == c.color[v]) return false;
  }
  return true;
}

namespace detail {

// Components of g with the vertices in removed deleted.
inline std::vector<std::vector<int>> components(const Graph& g, const std::vector<char>& removed) {
  std::vector<char> seen(removed);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < g.size(); ++s) {
    if (seen[s]) continue;
    out.emplace_back();
    std::deque<int> queue{s};
    seen[s] = 1;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      out.back().push_back(v);
      for (int u : g.neighbors(v))
        if (!seen[u]) seen[u] = 1, queue.push_back(u);
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

inline std::vector<std::vector<int>> components(const Graph& g) { return components(g, std::vector<char>(g.size(), 0)); }

inline bool connected_without(const Graph& g, std::initializer_list<int> gone) {
  std::vector<char> removed(g.size(), 0);
  for (int v : gone) removed[v] = 1;
  return components(g, removed).size() <= 1;
}

// BFS order from root avoiding removed vertices.
inline std::vector<int> bfs_order(const Graph& g, int root, std::vector<char> removed) {
  std::vector<int> order{root};
  removed[root] = 1;
  for (std::size_t head = 0; head < order.size(); ++head)
    for (int u : g.neighbors(order[head]))
      if (!removed[u]) removed[u] = 1, order.push_back(u);
  return order;
}

// Colors the vertices of order (in that order) with the smallest color not
// used by an already colored neighbor; color[v] < 0 means uncolored.
inline void greedy_in_order(const Graph& g, const std::vector<int>& order, std::vector<int>& color) {
  std::vector<char> used;
  for (int v : order) {
    used.assign(static_cast<std::size_t>(g.degree(v)) + 1, 0);
    for (int u : g.neighbors(v))
      if (color[u] >= 0 && color[u] < static_cast<int>(used.size())) used[color[u]] = 1;
    int c = 0;
    while (used[c]) ++c;
    color[v] = c;
  }
}

inline GraphColoring finish(std::vector<int> color) {
  GraphColoring out;
  out.color = std::move(color);
  for (int c : out.color) out.colors = std::max(out.colors, c + 1);
  return out;
}

inline std::optional<int> cut_vertex(const Graph& g, std::optional<int> also_removed = std::nullopt) {
  for (int z = 0; z < g.size(); ++z) {
    if (z == also_removed) continue;
    std::vector<char> removed(g.size(), 0);
    removed[z] = 1;
    if (also_removed) removed[*also_removed] = 1;
    if (components(g, removed).size() > 1) return z;
  }
  return std::nullopt;
}

struct Triple {
  int a, b, v;
};

inline bool valid_triple(const Graph& g, const Triple& t) {
  return t.a != t.b && !g.adjacent(t.a, t.b) && g.adjacent(t.v, t.a) && g.adjacent(t.v, t.b) &&
         connected_without(g, {t.a, t.b});
}

inline bool three_connected(const Graph& g) {
  for (int u = 0; u < g.size(); ++u)
    for (int w = u + 1; w < g.size(); ++w)
      if (!connected_without(g, {u, w})) return false;
  return true;
}

// Vertices a, b, v with v adjacent to the non-adjacent pair a, b and
// g - {a, b} connected, for a 2-connected regular non-complete g.
inline Triple find_triple(const Graph& g) {
  const int n = g.size();
  auto first_open_pair = [&](int v) -> std::optional<Triple> {
    const auto& nb = g.neighbors(v);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j)
        if (!g.adjacent(nb[i], nb[j])) return Triple{nb[i], nb[j], v};
    return std::nullopt;
  };
  if (three_connected(g)) {
    for (int v = 0; v < n; ++v)
      if (auto t = first_open_pair(v)) return *t;
  } else {
    int x = -1;
    for (int v = 0; v < n && x < 0; ++v)
      if (g.degree(v) >= 3 && g.degree(v) < n - 1) x = v;
    if (x >= 0) {
      std::optional<Triple> t;
      if (!cut_vertex(g, x)) {
        // b at distance two from x, v a common neighbor.
        for (int v : g.neighbors(x)) {
          for (int b : g.neighbors(v))
            if (b != x && !g.adjacent(x, b)) {
              t = Triple{x, b, v};
              break;
            }
          if (t) break;
        }
      } else {
        // Two leaf blocks of g - x: components of g - x - z free of cut
        // vertices of g - x.
        std::vector<char> is_cut(n, 0);
        for (int z = 0; z < n; ++z) {
          if (z == x) continue;
          std::vector<char> removed(n, 0);
          removed[x] = removed[z] = 1;
          is_cut[z] = components(g, removed).size() > 1;
        }
        std::vector<std::vector<int>> leaves;
        for (int z = 0; z < n; ++z) {
          if (!is_cut[z]) continue;
          std::vector<char> removed(n, 0);
          removed[x] = removed[z] = 1;
          for (auto& c : components(g, removed))
            if (std::none_of(c.begin(), c.end(), [&](int u) { return is_cut[u]; })) leaves.push_back(std::move(c));
        }
        if (leaves.size() >= 2) {
          auto neighbor_in = [&](const std::vector<int>& c) {
            for (int u : c)
              if (g.adjacent(x, u)) return u;
            return -1;
          };
          int a = neighbor_in(leaves[0]), b = neighbor_in(leaves[1]);
          if (a >= 0 && b >= 0) t = Triple{a, b, x};
        }
      }
      if (t && valid_triple(g, *t)) return *t;
    }
  }
  // Exhaustive search; only reached if the constructions above fail.
  for (int v = 0; v < n; ++v) {
    const auto& nb = g.neighbors(v);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        Triple t{nb[i], nb[j], v};
        if (valid_triple(g, t)) return t;
      }
  }
  throw InvariantError("brooks_color: no vertices a, b, v found");
}

inline std::vector<int> brooks(const Graph& g, int delta) {
  const int n = g.size();
  std::vector<int> color(n, -1);
  if (n == 0) return color;
  // A vertex of degree below delta: color in reverse BFS order from it, so
  // every other vertex still has its BFS parent uncolored.
  for (int r = 0; r < n; ++r) {
    if (g.degree(r) >= delta) continue;
    auto order = bfs_order(g, r, std::vector<char>(n, 0));
    std::reverse(order.begin(), order.end());
    greedy_in_order(g, order, color);
    return color;
  }
  // Regular. Split at a cut vertex z: z has spare degree in every piece.
  if (auto z = cut_vertex(g)) {
    std::vector<char> removed(n, 0);
    removed[*z] = 1;
    color[*z] = 0;
    for (auto& comp : components(g, removed)) {
      comp.push_back(*z);
      std::sort(comp.begin(), comp.end());
      std::vector<int> piece = brooks(g.induced(comp), delta);
      int zi = static_cast<int>(std::lower_bound(comp.begin(), comp.end(), *z) - comp.begin());
      int zc = piece[zi];
      for (std::size_t i = 0; i < comp.size(); ++i) {
        int c = piece[i];
        color[comp[i]] = c == zc ? 0 : c == 0 ? zc : c;
      }
    }
    return color;
  }
  Triple t = find_triple(g);
  color[t.a] = color[t.b] = 0;
  std::vector<char> removed(n, 0);
  removed[t.a] = removed[t.b] = 1;
  auto order = bfs_order(g, t.v, removed);
  std::reverse(order.begin(), order.end());
  greedy_in_order(g, order, color);
  return color;
}

}  // namespace detail

inline GraphColoring greedy_color(const Graph& g) {
  std::vector<int> order(g.size());
  for (int v = 0; v < g.size(); ++v) order[v] = v;
  std::vector<int> color(g.size(), -1);
  detail::greedy_in_order(g, order, color);
  return detail::finish(std::move(color));
}

/// Proper coloring of a connected graph with at most delta colors (Brooks).
inline GraphColoring brooks_color(const Graph& g, int delta) {
  if (delta < 3) throw ContractError("brooks_color: delta must be at least 3");
  if (g.max_degree() > delta) throw ContractError("brooks_color: degree exceeds delta");
  if (detail::components(g).size() > 1) throw ContractError("brooks_color: graph is not connected");
  if (g.size() == delta + 1 && g.is_complete()) throw ContractError("brooks_color: graph is complete on delta + 1 vertices");
  GraphColoring out = detail::finish(detail::brooks(g, delta));
  if (!is_proper(g, out) || out.colors > delta) throw InvariantError("brooks_color: produced an invalid coloring");
  return out;
}

/// Conflict graph of one pseudocolor class: vertex i is the class element
/// vertices[i]; edges_by_matroid[i] holds the edges contributed by matroid i.
struct ConflictGraph {
  std::vector<Element> vertices;
  Graph graph;
  std::vector<std::vector<std::pair<int, int>>> edges_by_matroid;
};

inline ConflictGraph build_conflict_graph(const std::vector<MatroidPtr>& ms, const Subset& cls,
                                          const std::vector<FlexibleDecomposition>& fds) {
  if (fds.size() != ms.size()) throw DomainError("build_conflict_graph: one decomposition per matroid required");
  ConflictGraph cg;
  cg.vertices = cls.elements();
  std::vector<int> index(cls.universe(), -1);
  for (std::size_t i = 0; i < cg.vertices.size(); ++i) index[cg.vertices[i]] = static_cast<int>(i);
  std::vector<std::pair<int, int>> all;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const FlexibleDecomposition& fd = fds[i];
    if (fd.witnesses.size() != fd.parts.size()) throw DomainError("build_conflict_graph: missing witnesses");
    auto& edges = cg.edges_by_matroid.emplace_back();
    for (std::size_t j = 0; j < fd.parts.size(); ++j) {
      const Subset& t = fd.parts[j];
      const Subset& a = fd.witnesses[j];
      const Matroid& m = fd.part_matroid(*ms[i], j);
      if (!t.is_subset_of(cls) || !a.is_subset_of(t)) throw DomainError("build_conflict_graph: part outside the class");
      std::vector<Element> rest = (t - a).elements();
      for (Element e : rest) {
        Subset circuit = fundamental_circuit(m, a, e);
        circuit.erase(e);
        if (circuit.empty()) throw ContractError("build_conflict_graph: element " + std::to_string(e) + " is a loop");
        Element partner = circuit.first();
        if (!is_independent(m, a.with(e).without(partner)))
          throw InvariantError("build_conflict_graph: exchange is not independent");
        edges.emplace_back(index[e], index[partner]);
      }
      for (std::size_t x = 0; x < rest.size(); ++x)
        for (std::size_t y = x + 1; y < rest.size(); ++y) edges.emplace_back(index[rest[x]], index[rest[y]]);
    }
    for (auto& [u, v] : edges)
      if (u > v) std::swap(u, v);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    all.insert(all.end(), edges.begin(), edges.end());
  }
  cg.graph = Graph::from_edges(static_cast<int>(cg.vertices.size()), all);
  return cg;
}

/// Proper coloring of a conflict graph for k matroids with at most
/// max(1, k(k-1)) colors.
inline GraphColoring color_conflict_graph(const ConflictGraph& cg, int k) {
  if (k < 2) throw DomainError("color_conflict_graph: k must be at least 2");
  const Graph& g = cg.graph;
  const int n = g.size();
  const int bound = k * (k - 1);
  const int delta = g.max_degree();
  if (delta > bound) throw InvariantError("color_conflict_graph: degree " + std::to_string(delta) + " exceeds k(k-1)");
  if (k == 2) {
    std::vector<int> color(n, -1);
    for (int s = 0; s < n; ++s) {
      if (color[s] >= 0) continue;
      color[s] = 0;
      std::deque<int> queue{s};
      while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int u : g.neighbors(v)) {
          if (color[u] < 0) {
            color[u] = 1 - color[v];
            queue.push_back(u);
          } else if (color[u] == color[v]) {
            throw InvariantError("color_conflict_graph: odd cycle in a two-matroid conflict graph");
          }
        }
      }
    }
    return detail::finish(std::move(color));
  }
  if (delta < bound) return greedy_color(g);
  std::vector<int> color(n, -1);
  for (const auto& comp : detail::components(g)) {
    Graph h = g.induced(comp);
    if (h.size() == bound + 1 && h.is_complete())
      throw InvariantError("color_conflict_graph: component is complete on k(k-1)+1 vertices");
    GraphColoring part = brooks_color(h, bound);
    for (std::size_t i = 0; i < comp.size(); ++i) color[comp[i]] = part.color[i];
  }
  return detail::finish(std::move(color));
}

/// Turns a pseudocoloring into a coloring of the intersection: each class is
/// split along a proper coloring of its conflict graph.
inline Coloring finalize_coloring(const std::vector<MatroidPtr>& ms, const Pseudocoloring& pc,
                                  std::vector<ConflictGraph>* graphs = nullptr) {
  Coloring out;
  const int k = static_cast<int>(ms.size());
  for (int c = 0; c < pc.q; ++c) {
    const Subset& cls = pc.classes[c];
    if (cls.empty()) continue;
    if (k == 1) {
      out.push_back(cls);
      continue;
    }
    ConflictGraph cg = build_conflict_graph(ms, cls, pc.decompositions[c]);
    GraphColoring gc = color_conflict_graph(cg, k);
    std::vector<Subset> split(static_cast<std::size_t>(gc.colors), Subset(cls.universe()));
    for (std::size_t v = 0; v < cg.vertices.size(); ++v) split[gc.color[v]].insert(cg.vertices[v]);
    for (auto& s : split) {
      if (s.empty()) continue;
      for (const auto& m : ms)
        if (!is_independent(*m, s)) throw InvariantError("finalize_coloring: class is not common independent");
      out.push_back(std::move(s));
    }
    if (graphs) graphs->push_back(std::move(cg));
  }
  return out;
}

/// Full pipeline: pseudocoloring followed by conflict-graph coloring.
inline Coloring color_intersection(const std::vector<MatroidPtr>& ms, const LoszOptions& opts = {},
                                   const GroundSet* labels = nullptr) {
  return finalize_coloring(ms, pseudocoloring(ms, opts, labels));
}

inline void write_dot(std::ostream& os, const ConflictGraph& cg, const GroundSet* labels = nullptr,
                      const std::string& name = "conflict") {
  auto label = [&](int v) {
    Element e = cg.vertices[v];
    return labels ? labels->label(e) : std::to_string(e);
  };
  os << "graph " << name << " {\n";
  for (std::size_t v = 0; v < cg.vertices.size(); ++v) os << "  v" << v << " [label=\"" << label(static_cast<int>(v)) << "\"];\n";
  for (std::size_t i = 0; i < cg.edges_by_matroid.size(); ++i)
    for (auto [a, b] : cg.edges_by_matroid[i]) os << "  v" << a << " -- v" << b << " [matroid=" << i << "];\n";
  os << "}\n";
}

}  // namespace matcolor
