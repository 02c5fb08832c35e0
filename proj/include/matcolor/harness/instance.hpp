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

// Instance files: a labeled ground set plus matroid descriptors, read from and
// written to JSON. Also the seeded instance generators.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "matcolor/errors.hpp"
#include "matcolor/matroid.hpp"
#include "matcolor/rational.hpp"
#include "matcolor/rng.hpp"
#include "matcolor/subset.hpp"

namespace matcolor::harness {

using nlohmann::json;

struct MatroidSpec {
  std::string type;  // uniform, partition, graphic, linear, free
  int rank = 0;
  std::vector<std::vector<std::string>> parts;
  std::vector<int> capacities;
  int vertices = 0;
  std::vector<std::tuple<int, int, std::string>> edges;
  std::uint64_t field = 0;
  std::map<std::string, std::vector<std::int64_t>> columns;

  friend bool operator==(const MatroidSpec&, const MatroidSpec&) = default;
};

struct Instance {
  std::vector<std::string> ground;
  std::vector<MatroidSpec> matroids;
  json metadata = json::object();

  friend bool operator==(const Instance&, const Instance&) = default;

  GroundSet labels() const { return GroundSet(ground); }
  std::vector<MatroidPtr> build() const;
};

inline json rational_to_json(const Rational& r) { return r.to_string(); }
inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) throw DomainError("json: rational must be a \"num/den\" string");
  return Rational::parse(j.get<std::string>());
}

inline json to_json(const MatroidSpec& s) {
  json j = {{"type", s.type}};
  if (s.type == "uniform") j["rank"] = s.rank;
  if (s.type == "partition") {
    j["parts"] = s.parts;
    j["capacities"] = s.capacities;
  }
  if (s.type == "graphic") {
    j["vertices"] = s.vertices;
    j["edges"] = json::array();
    for (const auto& [u, w, label] : s.edges) j["edges"].push_back(json::array({u, w, label}));
  }
  if (s.type == "linear") {
    j["field"] = s.field;
    j["columns"] = s.columns;
  }
  return j;
}

inline MatroidSpec spec_from_json(const json& j) {
  MatroidSpec s;
  s.type = j.at("type").get<std::string>();
  if (s.type == "uniform") {
    s.rank = j.at("rank").get<int>();
  } else if (s.type == "partition") {
    s.parts = j.at("parts").get<std::vector<std::vector<std::string>>>();
    s.capacities = j.at("capacities").get<std::vector<int>>();
  } else if (s.type == "graphic") {
    s.vertices = j.at("vertices").get<int>();
    for (const auto& e : j.at("edges")) s.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<std::string>());
  } else if (s.type == "linear") {
    s.field = j.at("field").get<std::uint64_t>();
    s.columns = j.at("columns").get<std::map<std::string, std::vector<std::int64_t>>>();
  } else if (s.type != "free") {
    throw DomainError("instance: unknown matroid type '" + s.type + "'");
  }
  return s;
}

inline json to_json(const Instance& inst) {
  json j = {{"ground_set", inst.ground}, {"matroids", json::array()}};
  for (const auto& s : inst.matroids) j["matroids"].push_back(to_json(s));
  if (!inst.metadata.empty()) j["metadata"] = inst.metadata;
  return j;
}

inline Instance instance_from_json(const json& j) {
  Instance inst;
  try {
    inst.ground = j.at("ground_set").get<std::vector<std::string>>();
    for (const auto& m : j.at("matroids")) inst.matroids.push_back(spec_from_json(m));
    if (j.contains("metadata")) inst.metadata = j.at("metadata");
  } catch (const json::exception& e) {
    throw DomainError(std::string("instance: ") + e.what());
  }
  inst.build();  // validates labels and matroid parameters
  return inst;
}

inline MatroidPtr build_matroid(const MatroidSpec& s, const GroundSet& g) {
  const std::size_t n = g.size();
  auto each_label_once = [&](const std::vector<std::string>& labels, const std::string& what) {
    std::vector<char> seen(n, 0);
    for (const auto& l : labels) {
      Element e = g.id(l);
      if (seen[e]) throw DomainError("instance: " + what + " lists '" + l + "' twice");
      seen[e] = 1;
    }
    if (labels.size() != n) throw DomainError("instance: " + what + " does not cover the ground set");
  };
  if (s.type == "free") return std::make_shared<FreeMatroid>(n);
  if (s.type == "uniform") return std::make_shared<UniformMatroid>(n, s.rank);
  if (s.type == "partition") {
    std::vector<std::string> all;
    std::vector<Subset> parts;
    for (const auto& p : s.parts) {
      all.insert(all.end(), p.begin(), p.end());
      parts.push_back(g.subset(p));
    }
    each_label_once(all, "partition matroid");
    return std::make_shared<PartitionMatroid>(std::move(parts), s.capacities);
  }
  if (s.type == "graphic") {
    std::vector<std::string> all;
    std::vector<std::pair<int, int>> edges(n);
    for (const auto& [u, w, label] : s.edges) {
      all.push_back(label);
      edges[g.id(label)] = {u, w};
    }
    each_label_once(all, "graphic matroid");
    return std::make_shared<GraphicMatroid>(s.vertices, std::move(edges));
  }
  if (s.type == "linear") {
    std::vector<std::string> all;
    std::vector<std::vector<std::int64_t>> cols(n);
    for (const auto& [label, c] : s.columns) {
      all.push_back(label);
      cols[g.id(label)] = c;
    }
    each_label_once(all, "linear matroid");
    return std::make_shared<LinearMatroid>(s.field, std::move(cols));
  }
  throw DomainError("instance: unknown matroid type '" + s.type + "'");
}

inline std::vector<MatroidPtr> Instance::build() const {
  try {
    GroundSet g = labels();
    std::vector<MatroidPtr> out;
    for (const auto& s : matroids) out.push_back(build_matroid(s, g));
    return out;
  } catch (const std::invalid_argument& e) {
    throw DomainError(std::string("instance: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw DomainError(std::string("instance: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Generators

/// r disjoint bases of GF(p)^r as a linear matroid, plus the partition
/// matroid whose parts are the bases (capacity 1). Element (i, j) is the j-th
/// vector of basis i, labeled "r{i}c{j}".
inline Instance gen_rota(int r, std::uint64_t p, std::uint64_t seed, int max_retries = 1000) {
  if (r < 1) throw DomainError("gen_rota: r must be positive");
  if (!LinearMatroid::is_prime(p)) throw DomainError("gen_rota: field size must be prime");
  Rng rng(seed);
  Instance inst;
  MatroidSpec lin, part;
  lin.type = "linear";
  lin.field = p;
  part.type = "partition";
  for (int i = 0; i < r; ++i) {
    std::vector<std::vector<std::int64_t>> basis;
    for (int attempt = 0;; ++attempt) {
      if (attempt == max_retries)
        throw Refusal("gen_rota: no basis found for row " + std::to_string(i) + " after " + std::to_string(max_retries) +
                      " draws over GF(" + std::to_string(p) + ")");
      basis.assign(static_cast<std::size_t>(r), std::vector<std::int64_t>(static_cast<std::size_t>(r)));
      for (auto& v : basis)
        for (auto& x : v) x = static_cast<std::int64_t>(rng.below(p));
      bool zero = std::any_of(basis.begin(), basis.end(), [](const auto& v) {
        return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
      });
      if (!zero && LinearMatroid(p, basis).full_rank() == r) break;
    }
    std::vector<std::string> row;
    for (int j = 0; j < r; ++j) {
      std::string label = "r" + std::to_string(i) + "c" + std::to_string(j);
      inst.ground.push_back(label);
      row.push_back(label);
      lin.columns[label] = basis[j];
    }
    part.parts.push_back(std::move(row));
    part.capacities.push_back(1);
  }
  inst.matroids = {lin, part};
  inst.metadata = {{"generator", "rota"}, {"r", r}, {"p", p}, {"seed", seed}};
  return inst;
}

struct RandomParams {
  int n = 8;
  int k = 2;
  std::string kind = "mixed";  // graphic, linear, partition, uniform, or mixed
  int max_vertices = 6;        // graphic
  int max_dim = 5;             // linear over GF(2)
  int max_parts = 4;           // partition
};

inline MatroidSpec random_spec(const std::vector<std::string>& ground, const std::string& kind, const RandomParams& prm,
                               Rng& rng) {
  const int n = static_cast<int>(ground.size());
  MatroidSpec s;
  s.type = kind;
  if (kind == "uniform") {
    s.rank = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
  } else if (kind == "partition") {
    int parts = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(n, prm.max_parts))));
    s.parts.assign(static_cast<std::size_t>(parts), {});
    for (int e = 0; e < n; ++e) s.parts[e < parts ? e : rng.below(static_cast<std::uint64_t>(parts))].push_back(ground[e]);
    for (const auto& p : s.parts) s.capacities.push_back(1 + static_cast<int>(rng.below(p.size())));
  } else if (kind == "graphic") {
    s.vertices = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::max(1, prm.max_vertices - 1))));
    for (int e = 0; e < n; ++e) {
      int a, b;
      do {
        a = static_cast<int>(rng.below(static_cast<std::uint64_t>(s.vertices)));
        b = static_cast<int>(rng.below(static_cast<std::uint64_t>(s.vertices)));
      } while (a == b);
      s.edges.emplace_back(std::min(a, b), std::max(a, b), ground[e]);
    }
  } else if (kind == "linear") {
    s.field = 2;
    int dim = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(prm.max_dim)));
    for (int e = 0; e < n; ++e) {
      std::vector<std::int64_t> c;
      do {
        c.assign(static_cast<std::size_t>(dim), 0);
        for (auto& x : c) x = static_cast<std::int64_t>(rng.below(2));
      } while (std::all_of(c.begin(), c.end(), [](std::int64_t x) { return x == 0; }));
      s.columns[ground[e]] = std::move(c);
    }
  } else if (kind != "free") {
    throw DomainError("gen_random: unknown kind '" + kind + "'");
  }
  return s;
}

/// k random loopless matroids on n elements labeled e0..e{n-1}.
inline Instance gen_random(const RandomParams& prm, std::uint64_t seed) {
  if (prm.n < 1 || prm.k < 1) throw DomainError("gen_random: n and k must be positive");
  static const std::vector<std::string> kinds = {"graphic", "linear", "partition", "uniform"};
  Rng rng(seed);
  Instance inst;
  for (int e = 0; e < prm.n; ++e) inst.ground.push_back("e" + std::to_string(e));
  for (int i = 0; i < prm.k; ++i) {
    std::string kind = prm.kind == "mixed" ? kinds[rng.below(kinds.size())] : prm.kind;
    inst.matroids.push_back(random_spec(inst.ground, kind, prm, rng));
  }
  inst.metadata = {{"generator", "random"}, {"n", prm.n}, {"k", prm.k}, {"kind", prm.kind}, {"seed", seed}};
  return inst;
}

/// Complete graph on `vertices` with every edge repeated `multiplicity`
/// times, paired with a partition matroid of capacity-1 parts of size
/// part_size over a seeded shuffle of the edges.
inline Instance gen_dense_multigraph(int vertices, int multiplicity, int part_size, std::uint64_t seed) {
  if (vertices < 2 || multiplicity < 1 || part_size < 1) throw DomainError("gen_dense_multigraph: bad parameters");
  Rng rng(seed);
  Instance inst;
  MatroidSpec g;
  g.type = "graphic";
  g.vertices = vertices;
  for (int a = 0; a < vertices; ++a)
    for (int b = a + 1; b < vertices; ++b)
      for (int c = 0; c < multiplicity; ++c) {
        std::string label = "v" + std::to_string(a) + "v" + std::to_string(b) + "x" + std::to_string(c);
        inst.ground.push_back(label);
        g.edges.emplace_back(a, b, label);
      }
  std::vector<std::string> order = inst.ground;
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  MatroidSpec p;
  p.type = "partition";
  for (std::size_t i = 0; i < order.size(); i += static_cast<std::size_t>(part_size)) {
    p.parts.emplace_back(order.begin() + static_cast<long>(i),
                         order.begin() + static_cast<long>(std::min(order.size(), i + static_cast<std::size_t>(part_size))));
    p.capacities.push_back(1);
  }
  inst.matroids = {g, p};
  inst.metadata = {{"generator", "dense-multigraph"}, {"vertices", vertices}, {"multiplicity", multiplicity},
                   {"part_size", part_size}, {"seed", seed}};
  return inst;
}

}  // namespace matcolor::harness
