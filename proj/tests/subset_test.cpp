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

#include "matcolor/subset.hpp"

#include <gtest/gtest.h>

namespace matcolor {
namespace {

TEST(SubsetTest, CardinalityTracksPopcount) {
  Subset s(130);
  s.insert(0);
  s.insert(64);
  s.insert(129);
  s.insert(64);
  EXPECT_EQ(s.size(), 3u);
  s.erase(64);
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(Subset::full(130).size(), 130u);
  Subset t = Subset::full(130) - s;
  EXPECT_EQ(t.size(), 128u);
  EXPECT_EQ((t | s), Subset::full(130));
  EXPECT_TRUE((t & s).empty());
}

TEST(SubsetTest, RejectsOutOfRangeAndMixedUniverses) {
  Subset s(5);
  EXPECT_THROW(s.insert(5), std::out_of_range);
  EXPECT_THROW(s.insert(-1), std::out_of_range);
  EXPECT_THROW((void)(s | Subset(6)), std::invalid_argument);
}

TEST(SubsetTest, LexOrderComparesSortedIds) {
  EXPECT_TRUE(lex_less(Subset(8, {1, 5}), Subset(8, {2})));
  EXPECT_TRUE(lex_less(Subset(8, {1}), Subset(8, {1, 2})));
  EXPECT_FALSE(lex_less(Subset(8, {1, 2}), Subset(8, {1, 2})));
}

TEST(GroundSetTest, LabelsMapToDenseIds) {
  GroundSet g({"a", "b", "c"});
  EXPECT_EQ(g.id("c"), 2);
  EXPECT_EQ(g.label(1), "b");
  EXPECT_EQ(g.labels_of(g.subset({"c", "a"})), (std::vector<std::string>{"a", "c"}));
  EXPECT_THROW(GroundSet({"x", "x"}), std::invalid_argument);
}

}  // namespace
}  // namespace matcolor
