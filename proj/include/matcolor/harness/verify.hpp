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

// Coloring verifiers. verify_coloring and recheck_coloring are written
// independently (different traversal orders and independence tests) so that
// each can audit the other.

#include <optional>
#include <string>
#include <vector>

#include "matcolor/matroid.hpp"

namespace matcolor::harness {

struct Verdict {
  bool ok = true;
  std::string message;
  int class_index = -1;
  int matroid_index = -1;
  int rank = -1;  // rank of the offending class in that matroid
  int size = -1;
};

/// Checks that the classes partition target and that every class is
/// independent in every matroid.
inline Verdict verify_coloring(const std::vector<MatroidPtr>& ms, const std::vector<Subset>& classes, const Subset& target) {
  Subset seen(target.universe());
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const Subset& cls = classes[c];
    if (cls.universe() != target.universe()) return {false, "class " + std::to_string(c) + " has the wrong universe"};
    if (seen.intersects(cls))
      return {false, "class " + std::to_string(c) + " overlaps an earlier class at element " +
                         std::to_string((seen & cls).first()), static_cast<int>(c)};
    if (!cls.is_subset_of(target))
      return {false, "class " + std::to_string(c) + " has element " + std::to_string((cls - target).first()) +
                         " outside the target", static_cast<int>(c)};
    seen |= cls;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      int r = ms[i]->rank(cls);
      if (r != static_cast<int>(cls.size())) {
        return {false, "class " + std::to_string(c) + " is dependent in matroid " + std::to_string(i),
                static_cast<int>(c), static_cast<int>(i), r, static_cast<int>(cls.size())};
      }
    }
  }
  if (seen != target) return {false, "element " + std::to_string((target - seen).first()) + " is not covered"};
  return {};
}

/// Second checker: per-element ownership counts, then independence by
/// growing each class one element at a time, matroids outermost and classes
/// in reverse order.
inline bool recheck_coloring(const std::vector<MatroidPtr>& ms, const std::vector<Subset>& classes, const Subset& target) {
  std::vector<int> owners(target.universe(), 0);
  for (const Subset& cls : classes) {
    if (cls.universe() != target.universe()) return false;
    for (Element e : cls.elements()) ++owners[static_cast<std::size_t>(e)];
  }
  for (std::size_t e = 0; e < owners.size(); ++e) {
    bool wanted = target.contains(static_cast<Element>(e));
    if (owners[e] != (wanted ? 1 : 0)) return false;
  }
  for (const auto& m : ms) {
    for (std::size_t c = classes.size(); c-- > 0;) {
      Subset grown(target.universe());
      int expected = 0;
      for (Element e : classes[c].elements()) {
        grown.insert(e);
        if (m->rank(grown) != ++expected) return false;
      }
    }
  }
  return true;
}

}  // namespace matcolor::harness
