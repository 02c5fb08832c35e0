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

// Two-matroid intersection: exchange graphs, maximum-cardinality and
// maximum-weight common independent sets.

#include <algorithm>
#include <deque>
#include <string>
#include <optional>
#include <vector>

#include "matcolor/matroid.hpp"
#include "matcolor/rational.hpp"

namespace matcolor {

/// Exchange graph of a common independent set I. For y in I and z outside
/// I there is an arc y -> z when I - y + z is independent in m1, and an arc
/// z -> y when it is independent in m2. Sources are the z with I + z
/// independent in m1; sinks those with I + z independent in m2.
struct ExchangeGraph {
  Subset current;
  std::vector<std::vector<Element>> out;  // sorted by id
  Subset sources;
  Subset sinks;
};

inline void require_shared_ground(const Matroid& m1, const Matroid& m2) {
  if (m1.universe() != m2.universe() || m1.ground() != m2.ground()) {
    throw DomainError("matroid intersection: matroids have different ground sets");
  }
}

inline ExchangeGraph exchange_graph(const Matroid& m1, const Matroid& m2, const Subset& current) {
  require_shared_ground(m1, m2);
  if (!is_independent(m1, current) || !is_independent(m2, current)) {
    throw ContractError("exchange_graph: set is not common independent");
  }
  const std::size_t n = m1.universe();
  ExchangeGraph g{current, std::vector<std::vector<Element>>(n), Subset(n), Subset(n)};
  const int size = static_cast<int>(current.size());
  (m1.ground() - current).for_each([&](Element z) {
    if (m1.rank(current.with(z)) > size) {
      g.sources.insert(z);
      current.for_each([&](Element y) { g.out[y].push_back(z); });
    } else {
      fundamental_circuit(m1, current, z).for_each([&](Element y) {
        if (y != z) g.out[y].push_back(z);
      });
    }
    if (m2.rank(current.with(z)) > size) {
      g.sinks.insert(z);
      current.for_each([&](Element y) { g.out[z].push_back(y); });
    } else {
      fundamental_circuit(m2, current, z).for_each([&](Element y) {
        if (y != z) g.out[z].push_back(y);
      });
    }
  });
  for (auto& v : g.out) std::sort(v.begin(), v.end());
  return g;
}

namespace detail {

inline void check_common(const Matroid& m1, const Matroid& m2, const Subset& s, const char* what) {
  if (!is_independent(m1, s) || !is_independent(m2, s)) throw InvariantError(std::string(what) + ": lost common independence");
}

// Elements reachable from the sources of g.
inline Subset reachable_from_sources(const ExchangeGraph& g) {
  Subset seen = g.sources;
  std::deque<Element> queue;
  g.sources.for_each([&](Element s) { queue.push_back(s); });
  while (!queue.empty()) {
    Element x = queue.front();
    queue.pop_front();
    for (Element y : g.out[x]) {
      if (!seen.contains(y)) {
        seen.insert(y);
        queue.push_back(y);
      }
    }
  }
  return seen;
}

}  // namespace detail

/// Maximum-cardinality common independent set, grown from `start` (which
/// must be common independent) along shortest augmenting paths.
inline Subset max_common_independent(const Matroid& m1, const Matroid& m2, std::optional<Subset> start = std::nullopt) {
  require_shared_ground(m1, m2);
  Subset current = start ? *start : Subset(m1.universe());
  while (true) {
    ExchangeGraph g = exchange_graph(m1, m2, current);
    const std::size_t n = m1.universe();
    std::vector<Element> parent(n, -1);
    Subset seen = g.sources;
    std::deque<Element> queue;
    g.sources.for_each([&](Element s) { queue.push_back(s); });
    Element end = -1;
    while (!queue.empty() && end < 0) {
      Element x = queue.front();
      queue.pop_front();
      if (g.sinks.contains(x)) {
        end = x;
        break;
      }
      for (Element y : g.out[x]) {
        if (seen.contains(y)) continue;
        seen.insert(y);
        parent[y] = x;
        queue.push_back(y);
      }
    }
    if (end < 0) return current;
    for (Element v = end; v >= 0; v = parent[v]) {
      if (current.contains(v)) {
        current.erase(v);
      } else {
        current.insert(v);
      }
    }
    detail::check_common(m1, m2, current, "max_common_independent");
  }
}

/// A set A with r1(A) + r2(U - A) = |I|, certifying that the common
/// independent set I has maximum cardinality. Empty optional when I can
/// still be augmented.
inline std::optional<Subset> intersection_certificate(const Matroid& m1, const Matroid& m2, const Subset& current) {
  ExchangeGraph g = exchange_graph(m1, m2, current);
  Subset reach = detail::reachable_from_sources(g);
  if (reach.intersects(g.sinks)) return std::nullopt;
  return m1.ground() - reach;
}

/// Maximum-weight common independent set. Augments one element at a time
/// along minimum-length paths (ties: fewest arcs, then smaller ids), which
/// keeps each intermediate set weight-optimal for its size; the best size is
/// returned. Non-positive weights never improve on the empty set.
inline Subset max_weight_common_independent(const Matroid& m1, const Matroid& m2, const std::vector<Rational>& w) {
  require_shared_ground(m1, m2);
  const std::size_t n = m1.universe();
  if (w.size() != n) throw DomainError("max_weight_common_independent: weight vector has wrong length");
  Subset current(n);
  Subset best = current;
  Rational current_weight(0), best_weight(0);

  struct Label {
    Rational length;
    int arcs = 0;
    bool set = false;
  };
  auto better = [](const Rational& l, int a, const Label& old) {
    if (!old.set) return true;
    if (l != old.length) return l < old.length;
    return a < old.arcs;
  };

  while (true) {
    ExchangeGraph g = exchange_graph(m1, m2, current);
    // Node length: -w for elements entering, +w for elements leaving.
    auto node_len = [&](Element v) { return current.contains(v) ? w[v] : -w[v]; };
    std::vector<Label> dist(n);
    std::vector<Element> parent(n, -1);
    g.sources.for_each([&](Element s) { dist[s] = {node_len(s), 0, true}; });
    // Bellman-Ford; lengths are conservative because current is extreme.
    for (std::size_t round = 0; round <= n; ++round) {
      bool changed = false;
      for (std::size_t x = 0; x < n; ++x) {
        if (!dist[x].set) continue;
        for (Element y : g.out[x]) {
          Rational l = dist[x].length + node_len(y);
          int a = dist[x].arcs + 1;
          // Equal labels re-point to a smaller predecessor; parents always
          // have fewer arcs, so the pointers stay acyclic.
          bool tie = dist[y].set && l == dist[y].length && a == dist[y].arcs && static_cast<Element>(x) < parent[y];
          bool improved = better(l, a, dist[y]);
          if (improved || tie) {
            dist[y] = {l, a, true};
            parent[y] = static_cast<Element>(x);
            changed = changed || improved;
          }
        }
      }
      if (!changed) break;
      if (round == n) throw InvariantError("max_weight_common_independent: negative cycle in exchange graph");
    }
    Element end = -1;
    g.sinks.for_each([&](Element t) {
      if (!dist[t].set) return;
      if (end < 0 || dist[t].length < dist[end].length ||
          (dist[t].length == dist[end].length && dist[t].arcs < dist[end].arcs)) {
        end = t;
      }
    });
    if (end < 0) return best;
    current_weight -= dist[end].length;
    Subset next = current;
    for (Element v = end; v >= 0; v = parent[v]) {
      if (next.contains(v)) {
        next.erase(v);
      } else {
        next.insert(v);
      }
    }
    detail::check_common(m1, m2, next, "max_weight_common_independent");
    current = std::move(next);
    if (current_weight > best_weight) {
      best = current;
      best_weight = current_weight;
    }
  }
}

}  // namespace matcolor
