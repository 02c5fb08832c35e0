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

// Iterative peeling for two-matroid intersection coloring with large chi_max:
// each round samples ceil(eps * chi) swap-rounded sets and removes them; the
// leftover is colored by the two-matroid pipeline.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "matcolor/conflict.hpp"
#include "matcolor/errors.hpp"
#include "matcolor/matroid_union.hpp"
#include "matcolor/rational.hpp"
#include "matcolor/rng.hpp"
#include "matcolor/swap_round.hpp"

namespace matcolor {

// ---------------------------------------------------------------------------
// Natural logarithms of rationals as shrinking rational intervals.

struct Interval {
  Rational lo, hi;
};

namespace detail {

inline Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

// 2 atanh(z) for |z| < 1 from `terms` series terms plus a tail bound.
inline Interval two_atanh(const Rational& z, int terms) {
  Rational z2 = z * z, power = z, sum(0);
  for (int j = 0; j < terms; ++j) {
    sum += power / Rational(2 * j + 1);
    power *= z2;
  }
  sum *= Rational(2);
  Rational tail = Rational(2) * abs(power) / (Rational(2 * terms + 1) * (Rational(1) - z2));
  return {sum - tail, sum + tail};
}

inline Rational power(const Rational& b, std::int64_t k) {
  Rational r(1), base = b;
  for (; k > 0; k >>= 1) {
    if (k & 1) r *= base;
    base *= base;
  }
  return r;
}

}  // namespace detail

/// Interval containing ln(x), x > 0; width shrinks geometrically in terms.
inline Interval ln_interval(const Rational& x, int terms) {
  if (x <= Rational(0)) throw DomainError("ln_interval: argument must be positive");
  Rational y = x;
  std::int64_t k = 0;
  while (y > Rational(4, 3)) y /= Rational(2), ++k;
  while (y < Rational(2, 3)) y *= Rational(2), --k;
  Interval r = detail::two_atanh((y - Rational(1)) / (y + Rational(1)), terms);
  Interval ln2 = detail::two_atanh(Rational(1, 3), terms);
  Rational kr(static_cast<long long>(k));
  if (k >= 0) return {r.lo + kr * ln2.lo, r.hi + kr * ln2.hi};
  return {r.lo + kr * ln2.hi, r.hi + kr * ln2.lo};
}

/// ceil(ln a / ln b) for a, b in (0, 1), evaluated exactly.
inline std::int64_t ceil_log_ratio(const Rational& a, const Rational& b) {
  if (a <= Rational(0) || a >= Rational(1) || b <= Rational(0) || b >= Rational(1))
    throw DomainError("ceil_log_ratio: arguments must lie in (0, 1)");
  for (int terms = 8; terms <= 8192; terms *= 2) {
    Interval la = ln_interval(a, terms), lb = ln_interval(b, terms);
    if (lb.hi >= Rational(0)) continue;
    Rational lo = la.hi / lb.lo, hi = la.lo / lb.hi;
    Rational c = lo.ceil();
    if (c == hi.ceil()) return c.small_num();
    if (hi - lo < Rational(1) && detail::power(b, c.small_num()) == a) return c.small_num();
  }
  throw InvariantError("ceil_log_ratio: bracketing did not converge");
}

struct RoundCount {
  std::int64_t rounds = 0;
  bool contraction_fallback = false;  // 1 - eps + 100 eps^2 >= 1; used 1 - eps
};

/// Number of peeling rounds ceil(ln eps / ln(1 - eps + 100 eps^2)). When the
/// base is at least 1 (eps >= 1/100) the base 1 - eps is used instead.
inline RoundCount peeling_rounds(const Rational& eps) {
  if (eps <= Rational(0) || eps >= Rational(1)) throw DomainError("peeling_rounds: eps must lie in (0, 1)");
  Rational rho = Rational(1) - eps + Rational(100) * eps * eps;
  if (rho < Rational(1)) return {ceil_log_ratio(eps, rho), false};
  return {ceil_log_ratio(eps, Rational(1) - eps), true};
}

inline std::int64_t sample_count(const Rational& eps, int chi) { return (eps * Rational(chi)).ceil().small_num(); }

// ---------------------------------------------------------------------------

struct PeelRound {
  int index = 0;
  std::size_t ground_size = 0;
  int chi_max = 0;
  std::int64_t samples = 0;
  std::vector<std::size_t> sample_sizes;
  std::size_t removed = 0;
};

struct PeelState {
  Subset live;                  // U^(i) after the last round run
  std::vector<Subset> classes;  // sampled sets in order, possibly overlapping
  std::vector<PeelRound> rounds;
  int final_chi_max = 0;        // chi_max of the leftover
};

struct FprasOptions {
  bool unsafe_epsilon = false;  // permit eps outside (0, 1/1000)
  std::uint64_t seed = 1;
};

struct FprasReport {
  Rational eps;
  bool unsafe_epsilon = false;
  RoundCount rounds;
  std::uint64_t seed = 0;
  int chi_max = 0;
  std::vector<PeelRound> per_round;
  std::vector<double> decay;    // chi_max^(i+1) / chi_max^(i)
  std::size_t phase1_classes = 0;
  std::size_t phase2_classes = 0;
  std::size_t total_classes = 0;  // after removing duplicates
  Rational bound;                 // (1 + 400 eps) chi_max
  bool within_bound = false;
};

inline int chi_max_of(const Matroid& m1, const Matroid& m2) {
  return std::max(chromatic_number(m1).first, chromatic_number(m2).first);
}

inline void check_epsilon(const Rational& eps, bool unsafe) {
  if (eps <= Rational(0)) throw DomainError("fpras: eps must be positive");
  if (!unsafe && eps >= Rational(1, 1000))
    throw Refusal("fpras: eps = " + eps.to_string() + " is outside (0, 1/1000); pass the unsafe-epsilon flag to run anyway");
  if (eps >= Rational(1)) throw DomainError("fpras: eps must be below 1");
}

/// Phase 1: rounds of sampling ceil(eps chi) swap-rounded sets with
/// alpha = 1 / chi and gamma = eps, removing what was sampled.
inline PeelState peel_rounds(const MatroidPtr& m1, const MatroidPtr& m2, const Rational& eps, const FprasOptions& opts = {}) {
  require_shared_ground(*m1, *m2);
  check_epsilon(eps, opts.unsafe_epsilon);
  m1->check_domain(m1->ground());
  PeelState st;
  st.live = m1->ground();
  std::int64_t ell = peeling_rounds(eps).rounds;
  for (std::int64_t i = 0; i < ell; ++i) {
    MatroidPtr r1 = restriction(m1, st.live), r2 = restriction(m2, st.live);
    PeelRound round;
    round.index = static_cast<int>(i);
    round.ground_size = st.live.size();
    round.chi_max = chi_max_of(*r1, *r2);
    if (round.chi_max == 0) break;
    round.samples = sample_count(eps, round.chi_max);
    Point x(m1->universe(), Rational(0));
    st.live.for_each([&](Element e) { x[e] = Rational(1, round.chi_max); });
    ConvexCombination comb = decompose_point(r1, r2, x);
    Subset taken(m1->universe());
    for (std::int64_t j = 0; j < round.samples; ++j) {
      Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)));
      Subset s = swap_round_combination(*r1, *r2, comb, eps, rng);
      round.sample_sizes.push_back(s.size());
      taken |= s;
      st.classes.push_back(std::move(s));
    }
    round.removed = taken.size();
    st.live -= taken;
    st.rounds.push_back(std::move(round));
  }
  st.final_chi_max = chi_max_of(*restriction(m1, st.live), *restriction(m2, st.live));
  return st;
}

/// Keeps each element in the earliest class containing it; drops empties.
inline Coloring remove_duplicates(const std::vector<Subset>& classes) {
  Coloring out;
  if (classes.empty()) return out;
  Subset seen(classes.front().universe());
  for (const Subset& c : classes) {
    Subset fresh = c - seen;
    seen |= c;
    if (!fresh.empty()) out.push_back(std::move(fresh));
  }
  return out;
}

/// Two-matroid pipeline on the restriction to `live`.
inline Coloring color_restricted(const MatroidPtr& m1, const MatroidPtr& m2, const Subset& live) {
  if (live.empty()) return {};
  return color_intersection({restriction(m1, live), restriction(m2, live)});
}

/// Peeling followed by the two-matroid pipeline on the leftover.
inline Coloring fpras_cover(const MatroidPtr& m1, const MatroidPtr& m2, const Rational& eps, const FprasOptions& opts = {},
                            FprasReport* report = nullptr) {
  PeelState st = peel_rounds(m1, m2, eps, opts);
  Coloring rest = color_restricted(m1, m2, st.live);
  std::vector<Subset> all = st.classes;
  all.insert(all.end(), rest.begin(), rest.end());
  Coloring out = remove_duplicates(all);
  if (report) {
    FprasReport& r = *report;
    r.eps = eps;
    r.unsafe_epsilon = opts.unsafe_epsilon;
    r.rounds = peeling_rounds(eps);
    r.seed = opts.seed;
    r.chi_max = chi_max_of(*m1, *m2);
    r.per_round = st.rounds;
    r.decay.clear();
    for (std::size_t i = 0; i < st.rounds.size(); ++i) {
      int next = i + 1 < st.rounds.size() ? st.rounds[i + 1].chi_max : st.final_chi_max;
      r.decay.push_back(static_cast<double>(next) / st.rounds[i].chi_max);
    }
    r.phase1_classes = st.classes.size();
    r.phase2_classes = rest.size();
    r.total_classes = out.size();
    r.bound = (Rational(1) + Rational(400) * eps) * Rational(r.chi_max);
    r.within_bound = Rational(static_cast<long long>(out.size())) <= r.bound;
  }
  return out;
}

struct WrapperReport {
  std::string path;  // "pipeline" or "fpras"
  std::string warning;
  int chi_max = 0;
  double threshold = 0;  // C ln n / eps^5 with C = 1000^5
  int repetitions = 0;
  std::size_t classes = 0;
};

/// (1 + eps) chi_max coloring in the large chi_max regime; otherwise (or for
/// eps >= 1) the two-matroid pipeline.
inline Coloring theorem_wrapper(const MatroidPtr& m1, const MatroidPtr& m2, const Rational& eps, std::uint64_t seed = 1,
                                int repetitions = 0, WrapperReport* report = nullptr) {
  require_shared_ground(*m1, *m2);
  if (eps <= Rational(0)) throw DomainError("theorem_wrapper: eps must be positive");
  WrapperReport r;
  r.chi_max = chi_max_of(*m1, *m2);
  const std::size_t n = m1->size();
  Coloring best;
  if (eps >= Rational(1)) {
    r.path = "pipeline";
  } else {
    // chi_max < C ln n / eps^5  <=>  chi_max eps^5 / C < ln n.
    Rational c = detail::power(Rational(1000), 5);
    Rational lhs = Rational(r.chi_max) * detail::power(eps, 5) / c;
    bool below = false;
    if (n >= 2) {
      Interval ln = ln_interval(Rational(static_cast<long long>(n)), 64);
      below = lhs < ln.lo;
      r.threshold = c.to_double() * (ln.lo.to_double() + ln.hi.to_double()) / 2 / detail::power(eps, 5).to_double();
    }
    if (below) {
      r.path = "pipeline";
      r.warning = "chi_max is below C ln(n) / eps^5; returning the two-matroid pipeline coloring";
    } else {
      r.path = "fpras";
    }
  }
  if (r.path == "pipeline") {
    best = color_intersection({m1, m2});
    r.repetitions = 1;
  } else {
    int reps = repetitions > 0 ? repetitions : std::max(1, static_cast<int>(std::ceil(std::log2(static_cast<double>(n) + 1))));
    r.repetitions = reps;
    for (int k = 0; k < reps; ++k) {
      Coloring c = fpras_cover(m1, m2, eps / Rational(1000), {false, derive_seed(seed, static_cast<std::uint64_t>(k))});
      if (k == 0 || c.size() < best.size()) best = std::move(c);
    }
  }
  r.classes = best.size();
  if (report) *report = r;
  return best;
}

}  // namespace matcolor
