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

// Monte Carlo checks of swap rounding: per-element marginals against
// (1 - gamma) alpha and lower-tail frequencies of |R cap S| against
// exp(-gamma t^2 / (20 mu)).

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "matcolor/rng.hpp"
#include "matcolor/swap_round.hpp"

namespace matcolor::harness {

struct StatSpec {
  MatroidPtr m1, m2;
  Rational alpha, gamma;
  int trials = 0;
  std::vector<Subset> targets;
  std::uint64_t seed = 1;
  double sigmas = 3;
};

struct MarginalRow {
  Element element;
  double empirical, expected, sigma;
  bool ok;
};

struct TailPoint {
  int t;
  double empirical, bound, sigma;
  bool ok;
};

struct TailCurve {
  Subset target;
  double mu;
  std::vector<TailPoint> points;
};

struct StatReport {
  int trials = 0;
  std::vector<MarginalRow> marginals;
  std::vector<TailCurve> tails;
  bool marginals_ok = true;
  bool tails_ok = true;
  bool ok() const { return marginals_ok && tails_ok; }
};

/// Runs spec.trials independent swap roundings (trial i seeded from
/// (spec.seed, i)) and compares frequencies with the analytic values.
inline StatReport stat_runner(const StatSpec& spec) {
  StatReport rep;
  rep.trials = spec.trials;
  if (spec.trials <= 0) return rep;
  const std::size_t n = spec.m1->universe();
  Point x(n, Rational(0));
  spec.m1->ground().for_each([&](Element e) { x[e] = spec.alpha; });
  ConvexCombination comb = decompose_point(spec.m1, spec.m2, x);
  std::vector<long> hits(n, 0);
  std::vector<std::vector<long>> counts(spec.targets.size());
  for (std::size_t s = 0; s < spec.targets.size(); ++s) counts[s].assign(spec.targets[s].size() + 1, 0);
  for (int trial = 0; trial < spec.trials; ++trial) {
    Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(trial)));
    Subset r = swap_round_combination(*spec.m1, *spec.m2, comb, spec.gamma, rng);
    r.for_each([&](Element e) { ++hits[e]; });
    for (std::size_t s = 0; s < spec.targets.size(); ++s) ++counts[s][r.intersection_size(spec.targets[s])];
  }
  const double trials = spec.trials;
  const double p = ((Rational(1) - spec.gamma) * spec.alpha).to_double();
  spec.m1->ground().for_each([&](Element e) {
    double emp = hits[e] / trials;
    double sigma = std::sqrt(p * (1 - p) / trials);
    bool ok = std::abs(emp - p) <= spec.sigmas * sigma + 1e-12;
    rep.marginals_ok = rep.marginals_ok && ok;
    rep.marginals.push_back({e, emp, p, sigma, ok});
  });
  const double gamma = spec.gamma.to_double();
  for (std::size_t s = 0; s < spec.targets.size(); ++s) {
    TailCurve curve{spec.targets[s], p * static_cast<double>(spec.targets[s].size()), {}};
    for (int t = 1; t <= static_cast<int>(std::floor(curve.mu)); ++t) {
      // Pr[|R cap S| <= mu - t]
      long below = 0;
      for (std::size_t v = 0; v < counts[s].size(); ++v)
        if (static_cast<double>(v) <= curve.mu - t + 1e-12) below += counts[s][v];
      double emp = below / trials;
      double bound = std::exp(-gamma * t * t / (20 * curve.mu));
      double b = std::min(1.0, bound);
      double sigma = std::sqrt(b * (1 - b) / trials);
      bool ok = emp <= bound + spec.sigmas * sigma + 1e-12;
      rep.tails_ok = rep.tails_ok && ok;
      curve.points.push_back({t, emp, bound, sigma, ok});
    }
    rep.tails.push_back(std::move(curve));
  }
  return rep;
}

inline nlohmann::json to_json(const StatReport& r, const GroundSet& labels) {
  nlohmann::json j = {{"trials", r.trials}, {"marginals", nlohmann::json::array()}, {"tails", nlohmann::json::array()}};
  for (const auto& m : r.marginals)
    j["marginals"].push_back({{"element", labels.label(m.element)}, {"empirical", m.empirical}, {"expected", m.expected},
                              {"sigma", m.sigma}, {"ok", m.ok}});
  for (const auto& c : r.tails) {
    nlohmann::json curve = {{"target", labels.labels_of(c.target)}, {"mu", c.mu}, {"points", nlohmann::json::array()}};
    for (const auto& p : c.points)
      curve["points"].push_back({{"t", p.t}, {"empirical", p.empirical}, {"bound", p.bound}, {"sigma", p.sigma}, {"ok", p.ok}});
    j["tails"].push_back(std::move(curve));
  }
  if (r.trials > 0) j["verdict"] = {{"marginals", r.marginals_ok}, {"tails", r.tails_ok}};
  return j;
}

}  // namespace matcolor::harness
