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

#include "matcolor/polytope.hpp"

#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "matcolor/matroid_union.hpp"

namespace matcolor {
namespace {

using testing::complete_graph;

Point random_point(std::mt19937_64& rng, std::size_t n, int den) {
  Point x;
  for (std::size_t e = 0; e < n; ++e) x.emplace_back(static_cast<long long>(rng() % (den + 1)), den);
  return x;
}

// A point of P(m) built as a random convex combination of independent sets.
Point random_member(std::mt19937_64& rng, const Matroid& m) {
  Point x(m.universe(), Rational(0));
  int pieces = 1 + static_cast<int>(rng() % 3);
  for (int p = 0; p < pieces; ++p) {
    Subset s = greedy_maximal_independent(m, testing::random_subset(rng, m.ground(), 0.6));
    if (rng() % 3 == 0 && !s.empty()) s.erase(s.first());
    s.for_each([&](Element e) { x[e] += Rational(1, pieces); });
  }
  return x;
}

TEST(SeparationTest, Examples) {
  auto k3 = complete_graph(3);
  Point x{Rational(3, 5), Rational(3, 5), Rational(9, 10)};
  auto s = separate_matroid_polytope(*k3, x);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(*s, Subset::full(3));
  EXPECT_FALSE(separate_matroid_polytope(*k3, Point(3, Rational(0))).has_value());

  // 1/q with q = chi lies in the polytope.
  auto k4 = complete_graph(4);
  int chi = chromatic_number(*k4).first;
  EXPECT_FALSE(separate_matroid_polytope(*k4, Point(6, Rational(1, chi))).has_value());
  EXPECT_TRUE(separate_matroid_polytope(*k4, Point(6, Rational(1, chi - 1))).has_value());
}

TEST(SeparationTest, OnePerChiAlwaysInside) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = testing::random_matroid(rng, 12);
    int chi = chromatic_number(*m).first;
    for (int q = chi; q <= chi + 2; ++q) {
      EXPECT_TRUE(in_matroid_polytope(*m, Point(12, Rational(1, q))));
    }
  }
}

TEST(SeparationTest, MatchesExhaustiveSearch) {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 600; ++trial) {
    int n = 1 + static_cast<int>(rng() % 11);
    auto m = testing::random_matroid(rng, n);
    Point x = random_point(rng, static_cast<std::size_t>(n), 1 + static_cast<int>(rng() % 6));
    EXPECT_EQ(separate_matroid_polytope(*m, x), separate_brute_force(*m, x)) << "trial " << trial;
  }
}

TEST(SeparationTest, DirectSumDecomposesPerBlock) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = testing::random_matroid(rng, 5);
    auto sum = q_copies(a, 3);
    Point x = random_point(rng, 15, 3);
    auto blocks = separate_blocks(*sum, x);
    for (const auto& b : blocks) EXPECT_GT(point_sum(x, b), Rational(sum->rank(b)));
    EXPECT_EQ(separate_matroid_polytope(*sum, x), separate_brute_force(*sum, x));
  }
}

TEST(SeparationTest, NegativeCoordinatesRejected) {
  auto k3 = complete_graph(3);
  EXPECT_THROW(separate_matroid_polytope(*k3, Point{Rational(-1), Rational(0), Rational(0)}), DomainError);
  EXPECT_THROW(separate_matroid_polytope(*k3, Point(4, Rational(0))), DomainError);
}

TEST(TightSetTest, Examples) {
  auto k3 = complete_graph(3);
  EXPECT_FALSE(find_tight_set(*k3, Point(3, Rational(0))).has_value());
  EXPECT_FALSE(find_tight_set(*k3, Point(3, Rational(1, 2))).has_value());
  // x = indicator of an independent set: smallest singleton of the set.
  Point ind{Rational(0), Rational(1), Rational(1)};
  EXPECT_EQ(find_tight_set(*k3, ind), Subset(3, {1}));
}

TEST(TightSetTest, MatchesExhaustiveSearch) {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 600; ++trial) {
    int n = 1 + static_cast<int>(rng() % 11);
    auto m = testing::random_matroid(rng, n);
    Point x = random_member(rng, *m);
    EXPECT_EQ(find_tight_set(*m, x), find_tight_set_brute_force(*m, x)) << "trial " << trial;
  }
}

TEST(TightSetTest, OnMinorsOfSums) {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 100; ++trial) {
    auto sum = q_copies(testing::random_matroid(rng, 4), 3);
    Subset c = greedy_maximal_independent(*sum, testing::random_subset(rng, sum->ground(), 0.2));
    auto m = contraction(sum, c);
    Point x = random_member(rng, *m);
    EXPECT_EQ(find_tight_set(*m, x), find_tight_set_brute_force(*m, x));
  }
}

TEST(DecomposeInPolytopeTest, ReconstructsPoint) {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 200; ++trial) {
    auto m = testing::random_matroid(rng, 10);
    Point x = random_member(rng, *m);
    auto comb = decompose_in_polytope(*m, x);
    EXPECT_LE(comb.sets.size(), 11u);
    Point y(10, Rational(0));
    Rational total(0);
    for (std::size_t i = 0; i < comb.sets.size(); ++i) {
      EXPECT_TRUE(is_independent(*m, comb.sets[i]));
      EXPECT_GT(comb.weights[i], Rational(0));
      total += comb.weights[i];
      comb.sets[i].for_each([&](Element e) { y[e] += comb.weights[i]; });
    }
    EXPECT_EQ(total, Rational(1));
    EXPECT_EQ(y, x);
  }
}

}  // namespace
}  // namespace matcolor
