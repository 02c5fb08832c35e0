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

#include "matcolor/intersection.hpp"

#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "matcolor/enumerate.hpp"

namespace matcolor {
namespace {

using testing::partition;
using testing::uniform;

// Bipartite K_{2,2}: edges 0=u1v1 1=u1v2 2=u2v1 3=u2v2.
MatroidPtr left_side() { return partition(4, {{0, 1}, {2, 3}}, {1, 1}); }
MatroidPtr right_side() { return partition(4, {{0, 2}, {1, 3}}, {1, 1}); }

struct Exhaustive {
  std::size_t max_size = 0;
  Rational max_weight{0};
};

Exhaustive enumerate_common(const Matroid& m1, const Matroid& m2, const std::vector<Rational>& w) {
  Exhaustive ex;
  for_each_subset(m1.ground(), [&](const Subset& s) {
    if (!is_independent(m1, s) || !is_independent(m2, s)) return;
    ex.max_size = std::max(ex.max_size, s.size());
    Rational total(0);
    s.for_each([&](Element e) { total += w[e]; });
    ex.max_weight = max(ex.max_weight, total);
  });
  return ex;
}

Rational weight_of(const Subset& s, const std::vector<Rational>& w) {
  Rational total(0);
  s.for_each([&](Element e) { total += w[e]; });
  return total;
}

TEST(MaxCommonIndependentTest, Examples) {
  EXPECT_EQ(max_common_independent(*left_side(), *right_side()).size(), 2u);
  auto k4 = testing::complete_graph(4);
  Subset b = max_common_independent(*k4, *k4);
  EXPECT_EQ(static_cast<int>(b.size()), k4->full_rank());
  EXPECT_EQ(max_common_independent(*uniform(5, 1), *testing::free_matroid(5)).size(), 1u);
}

TEST(MaxCommonIndependentTest, MismatchedGroundSetsRejected) {
  EXPECT_THROW(max_common_independent(*uniform(4, 2), *uniform(5, 2)), DomainError);
  auto d = deletion(uniform(4, 2), Subset(4, {0}));
  EXPECT_THROW(max_common_independent(*uniform(4, 2), *d), DomainError);
}

TEST(MaxCommonIndependentTest, MatchesEnumerationAndCertificate) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 1 + static_cast<int>(rng() % 14);
    auto m1 = testing::random_matroid(rng, n);
    auto m2 = testing::random_matroid(rng, n);
    Subset i = max_common_independent(*m1, *m2);
    ASSERT_TRUE(is_independent(*m1, i));
    ASSERT_TRUE(is_independent(*m2, i));
    std::vector<Rational> zero(static_cast<std::size_t>(n), Rational(0));
    EXPECT_EQ(i.size(), enumerate_common(*m1, *m2, zero).max_size);
    auto a = intersection_certificate(*m1, *m2, i);
    ASSERT_TRUE(a.has_value());
    EXPECT_EQ(m1->rank(*a) + m2->rank(m1->ground() - *a), static_cast<int>(i.size()));
  }
}

TEST(MaxWeightCommonIndependentTest, Examples) {
  std::vector<Rational> neg(4, Rational(-1));
  EXPECT_TRUE(max_weight_common_independent(*left_side(), *right_side(), neg).empty());
  std::vector<Rational> w{3, 1, 1, 3};
  Subset m = max_weight_common_independent(*left_side(), *right_side(), w);
  EXPECT_EQ(m, Subset(4, {0, 3}));
  EXPECT_EQ(weight_of(m, w), Rational(6));
}

TEST(MaxWeightCommonIndependentTest, SameMatroidGivesGreedyOptimum) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = testing::random_matroid(rng, 9);
    std::vector<Rational> w;
    for (int e = 0; e < 9; ++e) w.emplace_back(static_cast<long long>(rng() % 10), 1 + static_cast<long long>(rng() % 3));
    // Matroid greedy: heaviest first.
    std::vector<Element> order = m->ground().elements();
    std::stable_sort(order.begin(), order.end(), [&](Element a, Element b) { return w[a] > w[b]; });
    Subset greedy(9);
    for (Element e : order)
      if (w[e] > Rational(0) && is_independent(*m, greedy.with(e))) greedy.insert(e);
    EXPECT_EQ(weight_of(max_weight_common_independent(*m, *m, w), w), weight_of(greedy, w));
  }
}

TEST(MaxWeightCommonIndependentTest, MatchesEnumeration) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 1 + static_cast<int>(rng() % 12);
    auto m1 = testing::random_matroid(rng, n);
    auto m2 = testing::random_matroid(rng, n);
    std::vector<Rational> w;
    for (int e = 0; e < n; ++e) {
      w.emplace_back(static_cast<long long>(rng() % 21) - 6, 1 + static_cast<long long>(rng() % 4));
    }
    Subset s = max_weight_common_independent(*m1, *m2, w);
    ASSERT_TRUE(is_independent(*m1, s));
    ASSERT_TRUE(is_independent(*m2, s));
    EXPECT_EQ(weight_of(s, w), enumerate_common(*m1, *m2, w).max_weight);
  }
}

TEST(MaxWeightCommonIndependentTest, UniformWeightsGiveMaximumCardinality) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    auto m1 = testing::random_matroid(rng, 10);
    auto m2 = testing::random_matroid(rng, 10);
    std::vector<Rational> ones(10, Rational(1));
    EXPECT_EQ(max_weight_common_independent(*m1, *m2, ones).size(), max_common_independent(*m1, *m2).size());
  }
}

TEST(ExchangeGraphTest, ArcsMatchDirectIndependenceTests) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 100; ++trial) {
    auto m1 = testing::random_matroid(rng, 8);
    auto m2 = testing::random_matroid(rng, 8);
    Subset i = max_common_independent(*m1, *m2);
    if (!i.empty() && rng() % 2) i.erase(i.first());
    ExchangeGraph g = exchange_graph(*m1, *m2, i);
    auto has_arc = [&](Element a, Element b) {
      return std::binary_search(g.out[a].begin(), g.out[a].end(), b);
    };
    i.for_each([&](Element y) {
      (m1->ground() - i).for_each([&](Element z) {
        Subset swapped = i.without(y).with(z);
        EXPECT_EQ(has_arc(y, z), is_independent(*m1, swapped));
        EXPECT_EQ(has_arc(z, y), is_independent(*m2, swapped));
      });
    });
    (m1->ground() - i).for_each([&](Element z) {
      EXPECT_EQ(g.sources.contains(z), is_independent(*m1, i.with(z)));
      EXPECT_EQ(g.sinks.contains(z), is_independent(*m2, i.with(z)));
    });
  }
}

}  // namespace
}  // namespace matcolor
