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

// Covering a matroid by independent sets (matroid partition).

#include <deque>
#include <optional>
#include <utility>
#include <vector>

#include "matcolor/enumerate.hpp"
#include "matcolor/matroid.hpp"
#include "matcolor/rational.hpp"

namespace matcolor {

/// t disjoint independent sets covering a target set.
struct PartitionCertificate {
  int t = 0;
  std::vector<Subset> classes;
};

/// Either a partition, or a set S with |S| > t * rank(S).
struct PartitionResult {
  std::optional<PartitionCertificate> partition;
  std::optional<Subset> violator;
  bool feasible() const { return partition.has_value(); }
};

namespace detail {

// Maintains t disjoint independent sets and inserts elements one at a time
// along shortest exchange paths.
class Partitioner {
 public:
  Partitioner(const Matroid& m, int t) : m_(m), classes_(static_cast<std::size_t>(t), Subset(m.universe())) {
    owner_.assign(m.universe(), -1);
  }

  void add_class() { classes_.emplace_back(m_.universe()); }
  const std::vector<Subset>& classes() const { return classes_; }

  // Inserts s; on failure returns the set of elements reachable from s,
  // which violates the density bound.
  std::optional<Subset> insert(Element s) {
    const std::size_t n = m_.universe();
    std::vector<Element> parent(n, -1);
    std::vector<int> via(n, -1);  // class index of the arc into the node
    Subset seen(n);
    std::deque<Element> queue{s};
    seen.insert(s);
    while (!queue.empty()) {
      Element x = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < classes_.size(); ++i) {
        if (owner_[x] == static_cast<int>(i)) continue;
        const Subset& cls = classes_[i];
        if (m_.rank(cls.with(x)) > static_cast<int>(cls.size())) {
          augment(x, static_cast<int>(i), parent, via);
          return std::nullopt;
        }
        Subset circuit = fundamental_circuit(m_, cls, x);
        circuit.for_each([&](Element y) {
          if (y == x || seen.contains(y)) return;
          seen.insert(y);
          parent[y] = x;
          via[y] = static_cast<int>(i);
          queue.push_back(y);
        });
      }
    }
    return seen;
  }

 private:
  void augment(Element last, int sink_class, const std::vector<Element>& parent, const std::vector<int>& via) {
    std::vector<int> touched;
    // Walk back from the sink: each node takes the slot of its successor.
    Element y = last;
    int target = sink_class;
    while (true) {
      int next_target = via[y];
      if (owner_[y] >= 0) classes_[owner_[y]].erase(y);
      classes_[target].insert(y);
      owner_[y] = target;
      touched.push_back(target);
      if (parent[y] < 0) break;
      target = next_target;
      y = parent[y];
    }
    for (int c : touched) {
      if (!is_independent(m_, classes_[c])) throw InvariantError("matroid partition: augmentation broke independence");
    }
  }

  const Matroid& m_;
  std::vector<Subset> classes_;
  std::vector<int> owner_;
};

}  // namespace detail

/// Partition of the live ground set into t independent sets, or a witness
/// S with |S| > t * rank(S).
inline PartitionResult matroid_partition(const Matroid& m, int t) {
  if (t < 1) throw DomainError("matroid_partition: t must be positive");
  detail::Partitioner part(m, t);
  PartitionResult out;
  std::optional<Subset> bad;
  m.ground().for_each([&](Element e) {
    if (!bad) bad = part.insert(e);
  });
  if (bad) {
    out.violator = std::move(bad);
  } else {
    out.partition = PartitionCertificate{t, part.classes()};
  }
  return out;
}

/// Smallest t admitting a partition into t independent sets, with the
/// partition. Searches upward from ceil(n / rank(U)), reusing the partial
/// partition after each failed t.
inline std::pair<int, PartitionCertificate> chromatic_number(const Matroid& m) {
  if (m.ground().empty()) return {0, PartitionCertificate{}};
  int n = static_cast<int>(m.size());
  int r = m.full_rank();
  int t = (n + r - 1) / r;
  detail::Partitioner part(m, t);
  std::vector<Element> todo = m.ground().elements();
  for (std::size_t k = 0; k < todo.size();) {
    if (part.insert(todo[k])) {
      part.add_class();
      ++t;
    } else {
      ++k;
    }
  }
  return {t, PartitionCertificate{t, part.classes()}};
}

/// Densest subset |S| / rank(S) by exhaustive search. Ties go to the smaller
/// set, then the lexicographically smaller one. The winner is always a flat.
inline std::pair<Subset, Rational> max_density_witness(const Matroid& m, std::size_t limit = kBruteForceLimit) {
  if (m.ground().empty()) return {Subset(m.universe()), Rational(0)};
  std::optional<Subset> best;
  Rational best_density(0);
  for_each_subset(
      m.ground(),
      [&](const Subset& s) {
        if (s.empty()) return;
        Rational d(static_cast<long long>(s.size()), m.rank(s));
        if (!best || d > best_density ||
            (d == best_density && (s.size() < best->size() || (s.size() == best->size() && lex_less(s, *best))))) {
          best = s;
          best_density = d;
        }
      },
      limit);
  return {*best, best_density};
}

}  // namespace matcolor
