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

#include "matcolor/fpras.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"

namespace matcolor {
namespace {

// Triangle with every edge repeated m times, and a partition matroid taking
// one copy of each edge per part.
std::pair<MatroidPtr, MatroidPtr> fat_triangle(int m) {
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> parts(static_cast<std::size_t>(m));
  for (int c = 0; c < m; ++c)
    for (auto [a, b] : {std::pair{0, 1}, std::pair{1, 2}, std::pair{0, 2}}) {
      parts[c].push_back(static_cast<int>(edges.size()));
      edges.emplace_back(a, b);
    }
  return {testing::graphic(3, edges), testing::partition(3 * m, parts, std::vector<int>(m, 1))};
}

void expect_valid(const MatroidPtr& m1, const MatroidPtr& m2, const Coloring& col) {
  Subset seen(m1->universe());
  for (const Subset& c : col) {
    EXPECT_FALSE(seen.intersects(c));
    seen |= c;
    EXPECT_TRUE(is_common_independent(*m1, *m2, c));
  }
  EXPECT_EQ(seen, m1->ground());
}

TEST(ExactLogTest, IntervalsContainTheLogarithm) {
  for (auto [p, q] : {std::pair{1, 1000}, {9991, 10000}, {3, 2}, {1000, 1}, {1, 2}, {7, 5}}) {
    Rational x(p, q);
    Interval in = ln_interval(x, 16);
    double v = std::log(static_cast<double>(p) / q);
    EXPECT_LE(in.lo.to_double(), v + 1e-12);
    EXPECT_GE(in.hi.to_double(), v - 1e-12);
    EXPECT_LT((in.hi - in.lo).to_double(), 1e-9);
  }
  EXPECT_EQ(ceil_log_ratio(Rational(1, 8), Rational(1, 2)), 3);  // exactly 3
  EXPECT_EQ(ceil_log_ratio(Rational(1, 9), Rational(1, 2)), 4);
}

TEST(PeelingRoundsTest, KnownValues) {
  RoundCount r = peeling_rounds(Rational(1, 1000));
  EXPECT_EQ(r.rounds, 7672);
  EXPECT_FALSE(r.contraction_fallback);
  EXPECT_EQ(peeling_rounds(Rational(1, 20)).rounds, 59);
  EXPECT_EQ(peeling_rounds(Rational(1, 10)).rounds, 22);
  EXPECT_EQ(peeling_rounds(Rational(1, 5)).rounds, 8);
  EXPECT_TRUE(peeling_rounds(Rational(1, 5)).contraction_fallback);
  EXPECT_EQ(sample_count(Rational(1, 1000), 5000), 5);
  EXPECT_EQ(sample_count(Rational(1, 1000), 5001), 6);
}

TEST(FprasTest, EpsilonRange) {
  auto [m1, m2] = fat_triangle(2);
  EXPECT_THROW(peel_rounds(m1, m2, Rational(1, 20)), Refusal);
  EXPECT_THROW(peel_rounds(m1, m2, Rational(0)), DomainError);
  EXPECT_NO_THROW(peel_rounds(m1, m2, Rational(1, 20), {.unsafe_epsilon = true}));
}

TEST(FprasTest, FreeMatroidsNeedOneClass) {
  auto f = testing::free_matroid(6);
  Coloring col = fpras_cover(f, f, Rational(1, 5), {.unsafe_epsilon = true, .seed = 3});
  expect_valid(f, f, col);
  // Every sample is a thinned copy of the ground set; the leftover is one class.
  EXPECT_GE(col.size(), 1u);
}

TEST(FprasTest, FatTriangleRuns) {
  auto [m1, m2] = fat_triangle(8);
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    FprasReport report;
    Coloring col = fpras_cover(m1, m2, Rational(1, 5), {.unsafe_epsilon = true, .seed = seed}, &report);
    expect_valid(m1, m2, col);
    EXPECT_EQ(report.chi_max, 12);
    EXPECT_EQ(report.total_classes, col.size());
    ASSERT_FALSE(report.per_round.empty());
    EXPECT_EQ(report.per_round[0].chi_max, 12);
    EXPECT_EQ(report.per_round[0].samples, 3);
    for (std::size_t i = 1; i < report.per_round.size(); ++i)
      EXPECT_LE(report.per_round[i].chi_max, report.per_round[i - 1].chi_max);
    for (double d : report.decay) EXPECT_LE(d, 1.0);
    FprasReport again;
    EXPECT_EQ(fpras_cover(m1, m2, Rational(1, 5), {.unsafe_epsilon = true, .seed = seed}, &again), col);
  }
}

TEST(WrapperTest, LargeEpsilonAndSmallChiUsePipeline) {
  auto [m1, m2] = fat_triangle(4);
  WrapperReport report;
  Coloring col = theorem_wrapper(m1, m2, Rational(2), 1, 0, &report);
  EXPECT_EQ(report.path, "pipeline");
  EXPECT_TRUE(report.warning.empty());
  expect_valid(m1, m2, col);
  EXPECT_LE(static_cast<int>(col.size()), 2 * report.chi_max);

  auto [g, p] = fat_triangle(6);
  col = theorem_wrapper(g, p, Rational(1, 2), 1, 0, &report);
  EXPECT_EQ(report.path, "pipeline");
  EXPECT_FALSE(report.warning.empty());
  EXPECT_GT(report.threshold, 1e15);
  expect_valid(g, p, col);
}

}  // namespace
}  // namespace matcolor
