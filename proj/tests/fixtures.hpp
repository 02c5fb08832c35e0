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

// Shared fixtures for the unit tests: small named matroids and seeded
// random generators.

#include <memory>
#include <random>
#include <utility>
#include <vector>

#include "matcolor/matroid.hpp"

namespace matcolor::testing {

inline MatroidPtr uniform(int n, int r) { return std::make_shared<UniformMatroid>(static_cast<std::size_t>(n), r); }
inline MatroidPtr free_matroid(int n) { return std::make_shared<FreeMatroid>(static_cast<std::size_t>(n)); }

inline MatroidPtr graphic(int v, std::vector<std::pair<int, int>> edges) {
  return std::make_shared<GraphicMatroid>(v, std::move(edges));
}

inline MatroidPtr complete_graph(int v) {
  std::vector<std::pair<int, int>> e;
  for (int a = 0; a < v; ++a)
    for (int b = a + 1; b < v; ++b) e.emplace_back(a, b);
  return graphic(v, std::move(e));
}

/// Partition matroid over 0..n-1 from explicit parts.
inline MatroidPtr partition(int n, const std::vector<std::vector<int>>& parts, std::vector<int> caps) {
  std::vector<Subset> ps;
  for (const auto& p : parts) ps.push_back(Subset::of(static_cast<std::size_t>(n), p));
  return std::make_shared<PartitionMatroid>(std::move(ps), std::move(caps));
}

/// Random loopless matroid on n elements drawn from one of four families.
inline MatroidPtr random_matroid(std::mt19937_64& rng, int n) {
  int kind = static_cast<int>(rng() % 4);
  if (kind == 0) {
    int r = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
    return uniform(n, r);
  }
  if (kind == 1) {
    int parts = 1 + static_cast<int>(rng() % static_cast<unsigned>(std::min(n, 4)));
    std::vector<std::vector<int>> ps(static_cast<std::size_t>(parts));
    for (int e = 0; e < n; ++e) ps[e < parts ? e : rng() % ps.size()].push_back(e);
    std::vector<int> caps;
    for (const auto& p : ps) caps.push_back(1 + static_cast<int>(rng() % p.size()));
    return partition(n, ps, caps);
  }
  if (kind == 2) {
    int v = 2 + static_cast<int>(rng() % 5);
    std::vector<std::pair<int, int>> edges;
    while (static_cast<int>(edges.size()) < n) {
      int a = static_cast<int>(rng() % v), b = static_cast<int>(rng() % v);
      if (a != b) edges.emplace_back(a, b);
    }
    return graphic(v, edges);
  }
  int dim = 1 + static_cast<int>(rng() % 5);
  std::vector<std::vector<std::int64_t>> cols;
  while (static_cast<int>(cols.size()) < n) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(dim));
    bool nonzero = false;
    for (auto& x : c) {
      x = static_cast<std::int64_t>(rng() % 2);
      nonzero |= x != 0;
    }
    if (nonzero) cols.push_back(c);
  }
  return std::make_shared<LinearMatroid>(2, cols);
}

inline Subset random_subset(std::mt19937_64& rng, const Subset& within, double density = 0.5) {
  std::bernoulli_distribution coin(density);
  Subset s(within.universe());
  within.for_each([&](Element e) {
    if (coin(rng)) s.insert(e);
  });
  return s;
}

}  // namespace matcolor::testing
