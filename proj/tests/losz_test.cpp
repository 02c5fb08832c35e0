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

#include "matcolor/losz.hpp"
#include "matcolor/conflict.hpp"

#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

namespace matcolor {
namespace {

using testing::partition;

void expect_partition_of(const std::vector<Subset>& classes, const Subset& target) {
  Subset seen(target.universe());
  for (const Subset& c : classes) {
    EXPECT_FALSE(seen.intersects(c));
    seen |= c;
  }
  EXPECT_EQ(seen, target);
}

void expect_valid_pseudocoloring(const std::vector<MatroidPtr>& ms, const Pseudocoloring& pc) {
  ASSERT_EQ(static_cast<int>(pc.classes.size()), pc.q);
  expect_partition_of(pc.classes, ms.front()->ground());
  for (int c = 0; c < pc.q; ++c) {
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const FlexibleDecomposition& fd = pc.decompositions[c][i];
      EXPECT_EQ(fd.p, static_cast<int>(ms.size()));
      expect_partition_of(fd.parts, pc.classes[c]);
      FlexCheck check = validate_flexible(*ms[i], fd);
      EXPECT_TRUE(check.ok) << check.failure;
    }
  }
}

TEST(ValidateFlexibleTest, Examples) {
  auto u = testing::uniform(4, 3);  // {0,1,2,3} is a circuit
  FlexibleDecomposition single = make_decomposition(*u, 1, {Subset(4, {0, 1, 2})});
  EXPECT_TRUE(validate_flexible(*u, single).ok);

  FlexibleDecomposition halves = make_decomposition(*u, 1, {Subset(4, {0, 1}), Subset(4, {2, 3})});
  FlexCheck check = validate_flexible(*u, halves);
  EXPECT_FALSE(check.ok);
  ASSERT_EQ(check.combination.size(), 2u);
  Subset united = check.combination[0] | check.combination[1];
  EXPECT_FALSE(is_independent(*u, united));

  // The whole circuit as one part is 2-flexible but not 1-flexible.
  EXPECT_TRUE(validate_flexible(*u, make_decomposition(*u, 2, {Subset::full(4)})).ok);
  EXPECT_FALSE(validate_flexible(*u, make_decomposition(*u, 1, {Subset::full(4)})).ok);
}

TEST(ValidateFlexibleTest, ExhaustiveAgreesWithRankAdditivity) {
  std::mt19937_64 rng(109);
  int failures = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto m = testing::random_matroid(rng, 8);
    std::vector<Subset> parts(3, Subset(8));
    m->ground().for_each([&](Element e) { parts[rng() % 3].insert(e); });
    FlexibleDecomposition fd = make_decomposition(*m, 8, parts);
    FlexCheck exact = validate_flexible(*m, fd);
    // Brute force over every combination of independent subsets.
    bool all_ok = true;
    std::vector<std::vector<Subset>> indep;
    for (const Subset& t : fd.parts) {
      indep.emplace_back();
      for_each_subset(t, [&](const Subset& s) {
        if (is_independent(*m, s)) indep.back().push_back(s);
      });
    }
    std::vector<std::size_t> idx(indep.size(), 0);
    while (all_ok) {
      Subset u(8);
      for (std::size_t j = 0; j < idx.size(); ++j) u |= indep[j][idx[j]];
      all_ok = is_independent(*m, u);
      std::size_t j = 0;
      while (j < idx.size() && ++idx[j] == indep[j].size()) idx[j++] = 0;
      if (j == idx.size()) break;
    }
    EXPECT_EQ(exact.ok, all_ok);
    failures += all_ok ? 0 : 1;
  }
  EXPECT_GT(failures, 0);
}

TEST(BuildColoringInstanceTest, Shapes) {
  auto m = testing::uniform(2, 1);
  ColoringInstance ci = build_coloring_instance({m}, 2);
  EXPECT_EQ(ci.labels.size(), 4u);
  EXPECT_EQ(ci.parts.size(), 2u);
  for (const Subset& p : ci.parts) EXPECT_EQ(p.size(), 2u);
  EXPECT_EQ(ci.labels.label(ci.copy_of(1, 1)), "1#1");
  for (Element e = 0; e < 2; ++e)
    for (int c = 0; c < 2; ++c) EXPECT_EQ(ci.original(ci.copy_of(e, c)), std::make_pair(e, c));
  // q = 1 forces every element into the single copy.
  ColoringInstance one = build_coloring_instance({m}, 1);
  LpMatInstance inst{2, one.parts, {one.sides[0].matroid}, Point(2, Rational(0))};
  EXPECT_FALSE(solve_lp_mat(inst).feasible());
}

TEST(LoszRunTest, FreeSidesGiveMaxWeightBasisImmediately) {
  std::vector<Subset> parts{Subset(6, {0, 1, 2}), Subset(6, {3, 4, 5})};
  Point w{1, 5, 2, 7, 0, 3};
  std::vector<SideInput> sides{{std::make_shared<FreeMatroid>(6), 2}, {std::make_shared<FreeMatroid>(6), 2}};
  LoszResult r = losz_run(parts, sides, w);
  EXPECT_EQ(r.picked, Subset(6, {1, 3}));
  EXPECT_EQ(r.lp_solves, 1);
}

TEST(LoszRunTest, RejectsOverloadedElements) {
  std::vector<Subset> parts{Subset(2, {0, 1})};
  std::vector<SideInput> sides{{std::make_shared<FreeMatroid>(2), 1}, {std::make_shared<FreeMatroid>(2), 2}};
  EXPECT_THROW(losz_run(parts, sides, Point(2, Rational(0))), DomainError);
}

TEST(LoszRunTest, PickedSetIsBasisAndLeavesPartitionIt) {
  std::mt19937_64 rng(113);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 3 + static_cast<int>(rng() % 5);
    int k = 1 + static_cast<int>(rng() % 3);
    std::vector<MatroidPtr> ms;
    for (int i = 0; i < k; ++i) ms.push_back(testing::random_matroid(rng, n));
    int q = chi_max(ms);
    ColoringInstance ci = build_coloring_instance(ms, q);
    Point w;
    for (std::size_t e = 0; e < ci.n * q; ++e) w.emplace_back(static_cast<long long>(rng() % 4));
    LoszOptions opts;
    opts.check_invariants = true;
    std::vector<std::string> trace;
    opts.trace = [&](const std::string& line) { trace.push_back(line); };
    LoszResult r = losz_run(ci.parts, ci.sides, w, opts);
    for (const Subset& p : ci.parts) EXPECT_EQ(r.picked.intersection_size(p), 1u);
    ASSERT_EQ(r.trees.size(), static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      expect_partition_of(r.trees[i].leaf_parts(r.picked), r.picked & ci.sides[i].matroid->ground());
      FlexibleDecomposition fd =
          make_decomposition(k, r.trees[i].leaf_parts(r.picked), r.trees[i].leaf_matroids(r.picked));
      EXPECT_TRUE(validate_flexible(*ci.sides[i].matroid, fd, {.part_limit = 0}).ok);
    }
    // The picked set is at least as heavy as the LP optimum.
    LpMatInstance inst{ci.n * q, ci.parts, {}, w};
    for (const auto& s : ci.sides) inst.side.push_back(s.matroid);
    auto opt = solve_lp_mat(inst);
    ASSERT_TRUE(opt.feasible());
    EXPECT_GE(point_sum(w, r.picked), opt.point->value);
    EXPECT_FALSE(trace.empty());
    EXPECT_EQ(trace.front().rfind("solve 1:", 0), 0u);
  }
}

TEST(PseudocoloringTest, SingleMatroidGivesColoring) {
  std::mt19937_64 rng(127);
  for (int trial = 0; trial < 30; ++trial) {
    auto m = testing::random_matroid(rng, 4 + static_cast<int>(rng() % 6));
    Pseudocoloring pc = pseudocoloring({m});
    EXPECT_EQ(pc.q, chromatic_number(*m).first);
    EXPECT_EQ(pc.p, 1);
    for (const Subset& c : pc.classes) EXPECT_TRUE(is_independent(*m, c));
    expect_valid_pseudocoloring({m}, pc);
  }
}

// Leaf {0,4} sits below a contraction: it is independent there, but
// 0 + 4 = 6 over GF(2), so reading it in the full matroid breaks (c).
TEST(PseudocoloringTest, LeafMinorsKeepLinearPartsFlexible) {
  auto lin = std::make_shared<LinearMatroid>(
      2, std::vector<std::vector<std::int64_t>>{{1, 0, 1, 1, 0}, {1, 1, 0, 0, 0}, {0, 1, 0, 0, 0}, {1, 1, 1, 1, 0},
                                                {0, 0, 1, 0, 1}, {0, 1, 0, 1, 1}, {1, 0, 0, 1, 1}, {0, 0, 0, 1, 1}});
  auto part = partition(8, {{0, 3, 5}, {1, 6, 7}, {2, 4}}, {2, 3, 1});
  std::vector<MatroidPtr> ms{lin, part};
  Pseudocoloring pc = pseudocoloring(ms);
  expect_valid_pseudocoloring(ms, pc);
  for (const Subset& s : finalize_coloring(ms, pc))
    for (const auto& m : ms) EXPECT_TRUE(is_independent(*m, s));
  FlexibleDecomposition flat = make_decomposition(*lin, 2, {Subset(8, {6, 7}), Subset(8, {0, 4}), Subset(8, {5})});
  EXPECT_FALSE(validate_flexible(*lin, flat).ok);
}

TEST(PseudocoloringTest, FreeMatroidsGiveOneClass) {
  auto f = testing::free_matroid(5);
  Pseudocoloring pc = pseudocoloring({f, f});
  ASSERT_EQ(pc.q, 1);
  EXPECT_EQ(pc.classes[0], Subset::full(5));
  for (const auto& fd : pc.decompositions[0]) EXPECT_TRUE(validate_flexible(*f, fd).ok);
}

TEST(PseudocoloringTest, TwoPartitionMatroidsSixElements) {
  auto m1 = partition(6, {{0, 1}, {2, 3}, {4, 5}}, {1, 1, 1});
  auto m2 = partition(6, {{0, 2, 4}, {1, 3, 5}}, {2, 2});
  Pseudocoloring pc = pseudocoloring({m1, m2});
  EXPECT_EQ(pc.q, 2);
  EXPECT_EQ(pc.p, 2);
  expect_valid_pseudocoloring({m1, m2}, pc);
}

TEST(PseudocoloringTest, RandomGraphicAndPartitionInstances) {
  std::mt19937_64 rng(131);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 10;
    std::vector<std::pair<int, int>> edges;
    while (static_cast<int>(edges.size()) < n) {
      int a = static_cast<int>(rng() % 5), b = static_cast<int>(rng() % 5);
      if (a != b) edges.emplace_back(a, b);
    }
    auto g = testing::graphic(5, edges);
    std::vector<std::vector<int>> rows(3);
    for (int e = 0; e < n; ++e) rows[e % 3].push_back(e);
    auto pm = partition(n, rows, {2, 2, 1});
    std::vector<MatroidPtr> ms{g, pm};
    Pseudocoloring pc = pseudocoloring(ms);
    expect_valid_pseudocoloring(ms, pc);
  }
}

TEST(PseudocoloringTest, WarmStartKeepsPseudocoloringValid) {
  std::mt19937_64 rng(137);
  int fixed_any = 0;
  for (int trial = 0; trial < 30; ++trial) {
    int n = 4 + static_cast<int>(rng() % 7);
    std::vector<MatroidPtr> ms{testing::random_matroid(rng, n), testing::random_matroid(rng, n)};
    LoszOptions warm;
    warm.warm_start_vars = 0;
    warm.check_invariants = true;
    Pseudocoloring pc = pseudocoloring(ms, warm);
    expect_valid_pseudocoloring(ms, pc);
    ColoringInstance ci = build_coloring_instance(ms, pc.q);
    if (pc.q > 0 && !detail::greedy_common_bases(ms, ci).empty()) ++fixed_any;
  }
  EXPECT_GT(fixed_any, 0);
}

}  // namespace
}  // namespace matcolor
