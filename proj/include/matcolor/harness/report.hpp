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

// JSON renderings of algorithm outputs, with sets given by element labels.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "matcolor/fpras.hpp"
#include "matcolor/harness/instance.hpp"
#include "matcolor/swap_round.hpp"

namespace matcolor::harness {

inline json coloring_to_json(const std::vector<Subset>& classes, const GroundSet& labels) {
  json j = json::array();
  for (const Subset& c : classes) j.push_back(labels.labels_of(c));
  return j;
}

/// Accepts either a bare list of classes or an object with a "classes" key.
inline std::vector<Subset> coloring_from_json(const json& j, const GroundSet& labels) {
  const json& list = j.is_object() ? j.at("classes") : j;
  std::vector<Subset> out;
  try {
    for (const auto& c : list) out.push_back(labels.subset(c.get<std::vector<std::string>>()));
  } catch (const std::out_of_range& e) {
    throw DomainError(std::string("coloring: ") + e.what());
  }
  return out;
}

inline json combination_to_json(const ConvexCombination& comb, const GroundSet& labels) {
  json j = json::array();
  for (std::size_t i = 0; i < comb.sets.size(); ++i)
    j.push_back({{"set", labels.labels_of(comb.sets[i])}, {"weight", rational_to_json(comb.weights[i])}});
  return j;
}

inline json transcript_to_json(std::uint64_t seed, const SwapTranscript& t, const GroundSet& labels) {
  json steps = json::array();
  for (const auto& s : t.steps) steps.push_back({{"unit", labels.labels_of(s.unit)}, {"applied_to_first", s.applied_to_first}});
  return {{"seed", seed}, {"merges", steps}, {"merged", labels.labels_of(t.merged)}, {"result", labels.labels_of(t.result)}};
}

inline json to_json(const FprasReport& r) {
  json rounds = json::array();
  for (const auto& p : r.per_round)
    rounds.push_back({{"round", p.index}, {"ground_size", p.ground_size}, {"chi_max", p.chi_max}, {"samples", p.samples},
                      {"sample_sizes", p.sample_sizes}, {"removed", p.removed}});
  return {{"eps", rational_to_json(r.eps)},
          {"unsafe_epsilon", r.unsafe_epsilon},
          {"rounds_planned", r.rounds.rounds},
          {"rounds_base_fallback", r.rounds.contraction_fallback},
          {"seed", r.seed},
          {"chi_max", r.chi_max},
          {"per_round", rounds},
          {"decay", r.decay},
          {"phase1_classes", r.phase1_classes},
          {"phase2_classes", r.phase2_classes},
          {"total_classes", r.total_classes},
          {"bound", rational_to_json(r.bound)},
          {"within_bound", r.within_bound}};
}

inline json to_json(const WrapperReport& r) {
  json j = {{"path", r.path}, {"chi_max", r.chi_max}, {"threshold", r.threshold}, {"repetitions", r.repetitions},
            {"classes", r.classes}};
  if (!r.warning.empty()) j["warning"] = r.warning;
  return j;
}

}  // namespace matcolor::harness
