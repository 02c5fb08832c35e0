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

#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "matcolor/conflict.hpp"
#include "matcolor/harness/instance.hpp"
#include "matcolor/harness/oracles.hpp"
#include "matcolor/harness/report.hpp"
#include "matcolor/harness/stats.hpp"
#include "matcolor/harness/verify.hpp"
#include "matcolor/matroid_union.hpp"

namespace matcolor::harness {
namespace {

using matcolor::testing::partition;

TEST(InstanceTest, RoundTrip) {
  std::vector<Instance> all{gen_random({.n = 9, .k = 3}, 4), gen_random({.n = 6, .k = 2, .kind = "graphic"}, 5),
                            gen_rota(3, 5, 6), gen_dense_multigraph(3, 4, 5, 7)};
  for (const Instance& inst : all) {
    std::string text = to_json(inst).dump();
    Instance back = instance_from_json(json::parse(text));
    EXPECT_EQ(back, inst);
    EXPECT_EQ(to_json(back).dump(), text);
  }
}

TEST(InstanceTest, GeneratorsAreSeedDeterministic) {
  EXPECT_EQ(gen_random({.n = 10, .k = 2}, 99), gen_random({.n = 10, .k = 2}, 99));
  EXPECT_NE(gen_random({.n = 10, .k = 2}, 99), gen_random({.n = 10, .k = 2}, 98));
  EXPECT_EQ(gen_rota(4, 2, 1), gen_rota(4, 2, 1));
}

TEST(InstanceTest, ParsesHandWrittenFile) {
  json j = json::parse(R"({
    "ground_set": ["a", "b", "c"],
    "matroids": [
      {"type": "uniform", "rank": 2},
      {"type": "partition", "parts": [["a", "b"], ["c"]], "capacities": [1, 1]},
      {"type": "graphic", "vertices": 3, "edges": [[0, 1, "a"], [1, 2, "b"], [0, 2, "c"]]},
      {"type": "linear", "field": 3, "columns": {"a": [1, 0], "b": [0, 1], "c": [1, 2]}},
      {"type": "free"}
    ]})");
  Instance inst = instance_from_json(j);
  auto ms = inst.build();
  ASSERT_EQ(ms.size(), 5u);
  Subset abc = Subset::full(3);
  EXPECT_EQ(ms[0]->rank(abc), 2);
  EXPECT_EQ(ms[1]->rank(abc), 2);
  EXPECT_EQ(ms[2]->rank(abc), 2);
  EXPECT_EQ(ms[3]->rank(abc), 2);
  EXPECT_EQ(ms[4]->rank(abc), 3);
}

TEST(InstanceTest, RejectsBadFiles) {
  auto bad = [](const char* text) { return instance_from_json(json::parse(text)); };
  EXPECT_THROW(bad(R"({"ground_set": ["a"], "matroids": [{"type": "magic"}]})"), DomainError);
  EXPECT_THROW(bad(R"({"ground_set": ["a", "a"], "matroids": []})"), DomainError);
  EXPECT_THROW(bad(R"({"ground_set": ["a", "b"], "matroids": [{"type": "partition", "parts": [["a", "z"]], "capacities": [1]}]})"),
               DomainError);
  EXPECT_THROW(bad(R"({"ground_set": ["a", "b"], "matroids": [{"type": "partition", "parts": [["a"]], "capacities": [1]}]})"),
               DomainError);
  EXPECT_THROW(bad(R"({"ground_set": ["a"], "matroids": [{"type": "uniform", "rank": 0}]})"), DomainError);
  EXPECT_THROW(bad(R"({"ground_set": ["a"]})"), DomainError);
}

TEST(RationalJsonTest, Strings) {
  EXPECT_EQ(rational_to_json(Rational(3, 6)), json("1/2"));
  EXPECT_EQ(rational_from_json(json("-4/6")), Rational(-2, 3));
  EXPECT_EQ(rational_from_json(json(5)), Rational(5));
}

TEST(GenRotaTest, RowsAreBasesAndChiIsR) {
  for (int r = 1; r <= 6; ++r)
    for (std::uint64_t p : {2, 3, 5}) {
      Instance inst = gen_rota(r, p, 10 * r + p);
      EXPECT_EQ(inst.ground.size(), static_cast<std::size_t>(r * r));
      auto ms = inst.build();
      GroundSet g = inst.labels();
      for (const auto& row : inst.matroids[1].parts) EXPECT_EQ(ms[0]->rank(g.subset(row)), r);
      EXPECT_EQ(chromatic_number(*ms[0]).first, r);
      EXPECT_EQ(chromatic_number(*ms[1]).first, r);
    }
}

TEST(GenRotaTest, SmallHandExample) {
  // Rows {(1,0),(0,1)} and {(1,1),(1,2)} over GF(3).
  LinearMatroid m(3, {{1, 0}, {0, 1}, {1, 1}, {1, 2}});
  EXPECT_EQ(m.rank(Subset(4, {0, 1})), 2);
  EXPECT_EQ(m.rank(Subset(4, {2, 3})), 2);
}

TEST(VerifyTest, Examples) {
  auto k3 = matcolor::testing::complete_graph(3);
  std::vector<MatroidPtr> ms{k3};
  std::vector<Subset> singletons{Subset(3, {0}), Subset(3, {1}), Subset(3, {2})};
  EXPECT_TRUE(verify_coloring(ms, singletons, Subset::full(3)).ok);
  EXPECT_TRUE(recheck_coloring(ms, singletons, Subset::full(3)));
  Verdict v = verify_coloring(ms, {Subset::full(3)}, Subset::full(3));
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.class_index, 0);
  EXPECT_EQ(v.matroid_index, 0);
  EXPECT_EQ(v.rank, 2);
  EXPECT_FALSE(recheck_coloring(ms, {Subset::full(3)}, Subset::full(3)));
  EXPECT_FALSE(verify_coloring(ms, {Subset(3, {0, 1})}, Subset::full(3)).ok);
  EXPECT_FALSE(verify_coloring(ms, {Subset(3, {0, 1}), Subset(3, {1, 2})}, Subset::full(3)).ok);
}

TEST(VerifyTest, CheckersAgreeOnRandomColorings) {
  std::mt19937_64 rng(163);
  int passes = 0;
  for (int trial = 0; trial < 400; ++trial) {
    int n = 3 + static_cast<int>(rng() % 7);
    std::vector<MatroidPtr> ms{matcolor::testing::random_matroid(rng, n), matcolor::testing::random_matroid(rng, n)};
    int q = 1 + static_cast<int>(rng() % n);
    std::vector<Subset> classes(static_cast<std::size_t>(q), Subset(static_cast<std::size_t>(n)));
    for (int e = 0; e < n; ++e) {
      if (rng() % 20 == 0) continue;  // occasionally uncovered
      classes[rng() % q].insert(e);
      if (rng() % 25 == 0) classes[rng() % q].insert(e);  // occasionally doubled
    }
    bool a = verify_coloring(ms, classes, Subset::full(n)).ok;
    EXPECT_EQ(a, recheck_coloring(ms, classes, Subset::full(n)));
    passes += a;
  }
  EXPECT_GT(passes, 10);
}

TEST(OracleTest, ChromaticNumberExamples) {
  auto f = matcolor::testing::free_matroid(5);
  EXPECT_EQ(brute_chi_intersection({f, f}), 1);
  auto u = matcolor::testing::uniform(3, 1);
  EXPECT_EQ(brute_chi_intersection({u, u}), 3);
  auto k4 = matcolor::testing::complete_graph(4);
  auto rows = partition(6, {{0, 1}, {2, 3}, {4, 5}}, {1, 1, 1});
  int a = brute_chi_intersection({k4, rows});
  EXPECT_EQ(a, brute_chi_deepening({k4, rows}));
  EXPECT_EQ(a, 2);  // chi(K4) = 2 and {0,3,5}, {1,2,4} are common bases
  EXPECT_THROW(brute_chi_intersection({matcolor::testing::free_matroid(15)}), Refusal);
}

TEST(OracleTest, SearchOrdersAgree) {
  std::mt19937_64 rng(167);
  for (int trial = 0; trial < 80; ++trial) {
    int n = 2 + static_cast<int>(rng() % 9);
    int k = 1 + static_cast<int>(rng() % 3);
    std::vector<MatroidPtr> ms;
    for (int i = 0; i < k; ++i) ms.push_back(matcolor::testing::random_matroid(rng, n));
    int a = brute_chi_intersection(ms);
    EXPECT_EQ(a, brute_chi_deepening(ms));
    if (k == 1) {
      EXPECT_EQ(a, chromatic_number(*ms[0]).first);
    }
  }
}

TEST(OracleTest, CovLp) {
  auto u = matcolor::testing::uniform(2, 1);
  EXPECT_EQ(covlp_opt({u, u}), Rational(2));
  auto f = matcolor::testing::free_matroid(4);
  EXPECT_EQ(covlp_opt({f, f}), Rational(1));
  // K3 with a free matroid: fractional cover number 3/2.
  auto k3 = matcolor::testing::complete_graph(3);
  EXPECT_EQ(covlp_opt({k3, f->universe() == 3 ? f : matcolor::testing::free_matroid(3)}), Rational(3, 2));
  std::mt19937_64 rng(173);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 2 + static_cast<int>(rng() % 9);
    std::vector<MatroidPtr> ms{matcolor::testing::random_matroid(rng, n), matcolor::testing::random_matroid(rng, n)};
    Rational opt = covlp_opt(ms);
    EXPECT_GE(opt.ceil(), Rational(chi_max(ms)));
    EXPECT_LE(opt, Rational(brute_chi_intersection(ms)));
  }
}

TEST(StatRunnerTest, ZeroTrialsGivesEmptyReport) {
  auto u = matcolor::testing::uniform(2, 1);
  StatReport r = stat_runner({u, u, Rational(1, 2), Rational(1, 4), 0, {Subset::full(2)}, 1});
  EXPECT_TRUE(r.marginals.empty());
  EXPECT_TRUE(r.tails.empty());
  EXPECT_FALSE(to_json(r, GroundSet::indexed(2)).contains("verdict"));
}

TEST(StatRunnerTest, SmallSuitePasses) {
  auto k4 = matcolor::testing::complete_graph(4);
  auto rows = partition(6, {{0, 1}, {2, 3}, {4, 5}}, {1, 1, 1});
  StatReport r = stat_runner({k4, rows, Rational(1, 2), Rational(1, 4), 4000, {Subset::full(6), Subset(6, {0, 2, 4})}, 7});
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.marginals.size(), 6u);
  EXPECT_EQ(r.tails.size(), 2u);
  for (const auto& m : r.marginals) EXPECT_DOUBLE_EQ(m.expected, 3.0 / 8);
}

TEST(PipelineTest, RandomInstancesVerify) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Instance inst = gen_random({.n = 4 + static_cast<int>(seed % 5), .k = 2}, seed);
    auto ms = inst.build();
    Coloring col = color_intersection(ms);
    EXPECT_TRUE(verify_coloring(ms, col, ms[0]->ground()).ok) << seed;
    EXPECT_TRUE(recheck_coloring(ms, col, ms[0]->ground())) << seed;
    EXPECT_LE(static_cast<int>(col.size()), 2 * chi_max(ms));
  }
}

TEST(ReportTest, ColoringJsonRoundTrip) {
  GroundSet g({"a", "b", "c"});
  std::vector<Subset> col{Subset(3, {0, 2}), Subset(3, {1})};
  json j = coloring_to_json(col, g);
  EXPECT_EQ(j.dump(), R"([["a","c"],["b"]])");
  EXPECT_EQ(coloring_from_json(j, g), col);
  EXPECT_EQ(coloring_from_json(json{{"classes", j}}, g), col);
}

}  // namespace
}  // namespace matcolor::harness
