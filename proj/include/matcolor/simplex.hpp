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

// Dense-tableau simplex, exact over Rational or approximate over double.
//
//   maximize c.x  subject to  rows (<= or =),  x >= 0.
//
// Entering columns follow the most negative reduced cost, switching to
// Bland's rule after a run of degenerate pivots, so the method terminates.
// Rows added after a solve are cuts: rows whose basic value turns negative
// get artificials and phase one restarts from the current basis.

#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "matcolor/errors.hpp"
#include "matcolor/rational.hpp"

namespace matcolor {

enum class RowSense { kLessEqual, kEqual };
enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kPivotLimit };

using SparseRow = std::vector<std::pair<int, Rational>>;

template <class Num>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
  static Rational from(const Rational& r) { return r; }
  static bool zero(const Rational& v) { return v.is_zero(); }
  static bool neg(const Rational& v) { return v.sign() < 0; }
  static bool pos(const Rational& v) { return v.sign() > 0; }
  static bool same(const Rational& a, const Rational& b) { return a == b; }
  static bool feasible(const Rational& v) { return v.is_zero(); }
  static void clean(Rational&) {}
};

template <>
struct ScalarOps<double> {
  static constexpr double kEps = 1e-9;
  static double from(const Rational& r) { return r.to_double(); }
  static bool zero(double v) { return std::abs(v) <= kEps; }
  static bool neg(double v) { return v < -kEps; }
  static bool pos(double v) { return v > kEps; }
  static bool same(double a, double b) { return std::abs(a - b) <= kEps; }
  // Phase-one residual; error accumulates over many rows.
  static bool feasible(double v) { return std::abs(v) <= 1e-6; }
  static void clean(double& v) {
    if (std::abs(v) <= 1e-12) v = 0;
  }
};

template <class Num>
class BasicSimplex {
  using Ops = ScalarOps<Num>;

 public:
  BasicSimplex(int num_vars, std::vector<Rational> objective) : num_vars_(num_vars), objective_(std::move(objective)) {
    if (static_cast<int>(objective_.size()) != num_vars_) throw DomainError("simplex: objective length mismatch");
  }

  /// Adds a constraint; returns its row id (stable across solves).
  int add_row(SparseRow coeffs, RowSense sense, Rational rhs, std::string name = {}) {
    for (const auto& [j, v] : coeffs) {
      if (j < 0 || j >= num_vars_) throw DomainError("simplex: column out of range");
      (void)v;
    }
    int id = static_cast<int>(rows_.size());
    rows_.push_back({std::move(coeffs), sense, std::move(rhs), std::move(name)});
    if (solved_) append_cut(id);
    return id;
  }

  /// Caps the pivots of each solve() call; the LP is unusable after a
  /// kPivotLimit result. Negative means no cap.
  void set_pivot_limit(long limit) { pivot_limit_ = limit; }

  LpStatus solve() {
    solve_start_ = pivots_;
    if (status_ == LpStatus::kPivotLimit) throw ContractError("simplex: solve after pivot limit");
    if (!solved_) {
      build();
      solved_ = true;
      status_ = phase_one();
      if (status_ != LpStatus::kOptimal) return status_;
      status_ = primal(obj_);
      return status_;
    }
    if (status_ == LpStatus::kInfeasible) return status_;
    if (status_ == LpStatus::kUnbounded) throw ContractError("simplex: cannot add cuts to an unbounded LP");
    status_ = warm_phase_one();
    if (status_ == LpStatus::kOptimal) status_ = primal(obj_);
    return status_;
  }

  LpStatus status() const { return status_; }

  std::vector<Num> solution() const {
    std::vector<Num> x(static_cast<std::size_t>(num_vars_), Num(0));
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i] < num_vars_) x[basis_[i]] = rhs_[i];
    return x;
  }

  Num value() const {
    Num v(0);
    auto x = solution();
    for (int j = 0; j < num_vars_; ++j) v += Ops::from(objective_[j]) * x[j];
    return v;
  }

  int num_vars() const { return num_vars_; }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  const SparseRow& row(int id) const { return rows_.at(id).coeffs; }
  const Rational& rhs(int id) const { return rows_.at(id).rhs; }
  RowSense sense(int id) const { return rows_.at(id).sense; }
  long pivots() const { return pivots_; }

  /// Row value at the current solution.
  Num activity(int id, const std::vector<Num>& x) const {
    Num v(0);
    for (const auto& [j, a] : rows_.at(id).coeffs) v += Ops::from(a) * x[j];
    return v;
  }

  /// Plain-text listing of the working LP, one constraint per line.
  void dump(std::ostream& os) const {
    os << "max";
    for (int j = 0; j < num_vars_; ++j)
      if (!objective_[j].is_zero()) os << " + " << objective_[j] << " x" << j;
    os << "\n";
    for (const auto& r : rows_) {
      if (!r.name.empty()) os << r.name << ": ";
      bool first = true;
      for (const auto& [j, a] : r.coeffs) {
        os << (first ? "" : " + ") << a << " x" << j;
        first = false;
      }
      if (first) os << "0";
      os << (r.sense == RowSense::kEqual ? " = " : " <= ") << r.rhs << "\n";
    }
  }

 private:
  struct Row {
    SparseRow coeffs;
    RowSense sense;
    Rational rhs;
    std::string name;
  };

  // Tableau columns: structural, then one slack per <= row, then (during
  // phase one) artificials.
  void build() {
    const int m = static_cast<int>(rows_.size());
    int slacks = 0;
    for (const auto& r : rows_)
      if (r.sense == RowSense::kLessEqual) ++slacks;
    cols_ = num_vars_ + slacks;
    int artificial_start = cols_;
    std::vector<int> needs_artificial;
    tab_.assign(static_cast<std::size_t>(m), std::vector<Num>());
    rhs_.assign(static_cast<std::size_t>(m), Num(0));
    basis_.assign(static_cast<std::size_t>(m), -1);
    int slack = num_vars_;
    for (int i = 0; i < m; ++i) {
      const Row& r = rows_[i];
      auto& t = tab_[i];
      t.assign(static_cast<std::size_t>(cols_), Num(0));
      for (const auto& [j, a] : r.coeffs) t[j] += Ops::from(a);
      rhs_[i] = Ops::from(r.rhs);
      int my_slack = -1;
      if (r.sense == RowSense::kLessEqual) {
        my_slack = slack++;
        t[my_slack] = Num(1);
      }
      if (rhs_[i] < Num(0)) {
        for (auto& v : t) v = -v;
        rhs_[i] = -rhs_[i];
      }
      if (my_slack >= 0 && t[my_slack] == Num(1)) {
        basis_[i] = my_slack;
      } else {
        needs_artificial.push_back(i);
      }
    }
    int cols_with_art = cols_ + static_cast<int>(needs_artificial.size());
    for (auto& t : tab_) t.resize(static_cast<std::size_t>(cols_with_art), Num(0));
    for (std::size_t k = 0; k < needs_artificial.size(); ++k) {
      int i = needs_artificial[k];
      tab_[i][artificial_start + static_cast<int>(k)] = Num(1);
      basis_[i] = artificial_start + static_cast<int>(k);
    }
    artificial_start_ = artificial_start;
    cols_ = cols_with_art;
    obj_.assign(static_cast<std::size_t>(cols_), Num(0));
    obj_rhs_ = Num(0);
    for (int j = 0; j < num_vars_; ++j) obj_[j] = -Ops::from(objective_[j]);
  }

  LpStatus phase_one() {
    // Minimize the sum of artificials: objective row = sum over artificial
    // rows of -(row), so basic artificials have zero reduced cost.
    std::vector<Num> p1(static_cast<std::size_t>(cols_), Num(0));
    Num p1_rhs(0);
    for (int j = artificial_start_; j < cols_; ++j) p1[j] = Num(1);
    for (std::size_t i = 0; i < tab_.size(); ++i) {
      if (basis_[i] < artificial_start_) continue;
      for (int j = 0; j < cols_; ++j)
        if (!Ops::zero(tab_[i][j])) p1[j] -= tab_[i][j];
      p1_rhs -= rhs_[i];
    }
    phase_one_ = &p1;
    phase_one_rhs_ = &p1_rhs;
    LpStatus st = primal(p1, artificial_start_);
    phase_one_ = nullptr;
    phase_one_rhs_ = nullptr;
    if (st == LpStatus::kPivotLimit) return st;
    if (!Ops::feasible(p1_rhs)) return LpStatus::kInfeasible;
    // Drive remaining artificials out of the basis or drop redundant rows.
    for (std::size_t i = 0; i < tab_.size();) {
      if (basis_[i] < artificial_start_) {
        ++i;
        continue;
      }
      int q = -1;
      for (int j = 0; j < artificial_start_ && q < 0; ++j)
        if (!Ops::zero(tab_[i][j])) q = j;
      if (q >= 0) {
        pivot(static_cast<int>(i), q);
        ++i;
      } else {
        tab_.erase(tab_.begin() + static_cast<long>(i));
        rhs_.erase(rhs_.begin() + static_cast<long>(i));
        basis_.erase(basis_.begin() + static_cast<long>(i));
      }
    }
    for (auto& t : tab_) t.resize(static_cast<std::size_t>(artificial_start_));
    obj_.resize(static_cast<std::size_t>(artificial_start_));
    cols_ = artificial_start_;
    return LpStatus::kOptimal;
  }

  // After cuts: every row with a negative basic value gets an artificial
  // and phase one runs from the current basis.
  LpStatus warm_phase_one() {
    artificial_start_ = cols_;
    for (std::size_t i = 0; i < tab_.size(); ++i) {
      if (!Ops::neg(rhs_[i])) {
        if (rhs_[i] < Num(0)) rhs_[i] = Num(0);
        continue;
      }
      for (auto& v : tab_[i]) v = -v;
      rhs_[i] = -rhs_[i];
      for (auto& t : tab_) t.emplace_back(0);
      obj_.emplace_back(0);
      tab_[i][cols_] = Num(1);
      basis_[i] = cols_++;
    }
    if (cols_ == artificial_start_) return LpStatus::kOptimal;
    return phase_one();
  }

  // Pivots in a row with zero step before switching to Bland's rule; any
  // step of positive length switches back.
  static constexpr int kDegenerateStreak = 50;

  // Primal simplex on objective row `z`, entering columns in [0, limit).
  LpStatus primal(std::vector<Num>& z, int limit = -1) {
    if (limit < 0) limit = cols_;
    int streak = 0;
    while (true) {
      const bool bland = streak >= kDegenerateStreak;
      int q = -1;
      for (int j = 0; j < limit; ++j) {
        if (!Ops::neg(z[j])) continue;
        if (q < 0 || (!bland && z[j] < z[q])) q = j;
        if (bland) break;
      }
      if (q < 0) return LpStatus::kOptimal;
      if (pivot_limit_ >= 0 && pivots_ - solve_start_ >= pivot_limit_) return LpStatus::kPivotLimit;
      int p = -1;
      Num best(0);
      for (std::size_t i = 0; i < tab_.size(); ++i) {
        const Num& a = tab_[i][q];
        if (!Ops::pos(a)) continue;
        Num ratio = rhs_[i] / a;
        bool better = p < 0 || (ratio < best && !Ops::same(ratio, best));
        if (!better && Ops::same(ratio, best)) {
          // Ties: Bland's rule when cycling, else the larger pivot element.
          better = bland ? basis_[i] < basis_[p] : (a > tab_[p][q] && !Ops::same(a, tab_[p][q])) ||
                                                       (Ops::same(a, tab_[p][q]) && basis_[i] < basis_[p]);
        }
        if (better) {
          p = static_cast<int>(i);
          best = std::move(ratio);
        }
      }
      if (p < 0) return LpStatus::kUnbounded;
      streak = Ops::zero(best) ? streak + 1 : 0;
      pivot(p, q);
    }
  }

  void pivot(int p, int q) {
    ++pivots_;
    auto& prow = tab_[p];
    Num inv = Num(1) / prow[q];
    std::vector<int> nz;
    for (int j = 0; j < cols_; ++j) {
      if (prow[j] == Num(0)) continue;
      prow[j] *= inv;
      nz.push_back(j);
    }
    prow[q] = Num(1);
    rhs_[p] *= inv;
    auto eliminate = [&](std::vector<Num>& row, Num& r) {
      if (row[q] == Num(0)) return;
      Num f = row[q];
      for (int j : nz) {
        row[j] -= f * prow[j];
        Ops::clean(row[j]);
      }
      row[q] = Num(0);
      r -= f * rhs_[p];
      Ops::clean(r);
    };
    for (std::size_t i = 0; i < tab_.size(); ++i)
      if (static_cast<int>(i) != p) eliminate(tab_[i], rhs_[i]);
    eliminate(obj_, obj_rhs_);
    if (phase_one_) eliminate(*phase_one_, *phase_one_rhs_);
    basis_[p] = q;
  }

  // Adds row `id` (a <= constraint) to a solved tableau with a new basic
  // slack, expressed in terms of the current nonbasic columns.
  void append_cut(int id) {
    const Row& r = rows_[id];
    if (r.sense != RowSense::kLessEqual) throw ContractError("simplex: rows added after solving must be <= cuts");
    if (status_ == LpStatus::kInfeasible) return;
    int slack = cols_++;
    for (auto& t : tab_) t.emplace_back(0);
    obj_.emplace_back(0);
    std::vector<Num> t(static_cast<std::size_t>(cols_), Num(0));
    for (const auto& [j, a] : r.coeffs) t[j] += Ops::from(a);
    t[slack] = Num(1);
    Num b = Ops::from(r.rhs);
    for (std::size_t i = 0; i < tab_.size(); ++i) {
      int bj = basis_[i];
      if (t[bj] == Num(0)) continue;
      Num f = t[bj];
      for (int j = 0; j < cols_; ++j)
        if (!(tab_[i][j] == Num(0))) {
          t[j] -= f * tab_[i][j];
          Ops::clean(t[j]);
        }
      t[bj] = Num(0);
      b -= f * rhs_[i];
    }
    tab_.push_back(std::move(t));
    rhs_.push_back(std::move(b));
    basis_.push_back(slack);
  }

  int num_vars_;
  std::vector<Rational> objective_;
  std::vector<Row> rows_;

  bool solved_ = false;
  LpStatus status_ = LpStatus::kOptimal;
  int cols_ = 0;
  int artificial_start_ = 0;
  std::vector<std::vector<Num>> tab_;
  std::vector<Num> rhs_;
  std::vector<int> basis_;
  std::vector<Num> obj_;
  Num obj_rhs_{};
  long pivot_limit_ = -1;
  long solve_start_ = 0;
  std::vector<Num>* phase_one_ = nullptr;
  Num* phase_one_rhs_ = nullptr;
  long pivots_ = 0;
};

using ExactSimplex = BasicSimplex<Rational>;
using FloatSimplex = BasicSimplex<double>;

}  // namespace matcolor
