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

// Rank-oracle matroids over dense element ids.
//
// A Matroid lives in a universe of ids 0..universe()-1 and is defined on its
// live ground set ground() within that universe. Matroids are immutable after
// construction, so rank queries may run concurrently.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "matcolor/errors.hpp"
#include "matcolor/subset.hpp"

namespace matcolor {

class Matroid;
using MatroidPtr = std::shared_ptr<const Matroid>;

class Matroid {
 public:
  explicit Matroid(Subset ground) : ground_(std::move(ground)) {}
  virtual ~Matroid() = default;
  Matroid(const Matroid&) = delete;
  Matroid& operator=(const Matroid&) = delete;

  std::size_t universe() const { return ground_.universe(); }
  const Subset& ground() const { return ground_; }
  std::size_t size() const { return ground_.size(); }

  int rank(const Subset& s) const {
    check_domain(s);
    return do_rank(s);
  }
  int full_rank() const { return do_rank(ground_); }

  /// Unique circuit in a + e, for a independent and a + e dependent. The
  /// caller checks both; see fundamental_circuit.
  Subset circuit(const Subset& a, Element e) const { return do_circuit(a, e); }

  /// Throws DomainError unless s is a subset of the live ground set.
  void check_domain(const Subset& s) const {
    if (s.universe() != universe()) {
      throw DomainError("matroid: subset universe " + std::to_string(s.universe()) + " != " +
                        std::to_string(universe()));
    }
    if (!s.is_subset_of(ground_)) {
      Subset bad = s - ground_;
      throw DomainError("matroid: element " + std::to_string(bad.first()) + " is outside the live ground set");
    }
  }

  virtual std::string family() const = 0;

  /// Partition of the ground set into direct-sum blocks (coarsest known;
  /// blocks need not be connected). Rank is additive across blocks.
  virtual std::vector<Subset> blocks() const { return {ground_}; }

 protected:
  virtual int do_rank(const Subset& s) const = 0;

  virtual Subset do_circuit(const Subset& a, Element e) const {
    Subset ae = a.with(e);
    const int r = static_cast<int>(a.size());
    Subset out(universe());
    out.insert(e);
    a.for_each([&](Element f) {
      if (do_rank(ae.without(f)) == r) out.insert(f);
    });
    return out;
  }

  void reject_loops() const {
    ground_.for_each([&](Element e) {
      if (do_rank(Subset(universe(), {e})) != 1) {
        throw DomainError(family() + " matroid: element " + std::to_string(e) +
                          " is a loop; loops are not supported");
      }
    });
  }

 private:
  Subset ground_;
};

class FreeMatroid final : public Matroid {
 public:
  explicit FreeMatroid(Subset ground) : Matroid(std::move(ground)) {}
  explicit FreeMatroid(std::size_t n) : Matroid(Subset::full(n)) {}
  std::string family() const override { return "free"; }

 protected:
  int do_rank(const Subset& s) const override { return static_cast<int>(s.size()); }
};

class UniformMatroid final : public Matroid {
 public:
  UniformMatroid(Subset ground, int r) : Matroid(std::move(ground)), r_(r) {
    if (r < 0) throw DomainError("uniform matroid: negative rank");
    reject_loops();
  }
  UniformMatroid(std::size_t n, int r) : UniformMatroid(Subset::full(n), r) {}
  std::string family() const override { return "uniform"; }
  int rank_parameter() const { return r_; }

 protected:
  int do_rank(const Subset& s) const override { return std::min(static_cast<int>(s.size()), r_); }

 private:
  int r_;
};

class PartitionMatroid final : public Matroid {
 public:
  /// Parts must be disjoint; the ground set is their union.
  PartitionMatroid(std::vector<Subset> parts, std::vector<int> caps)
      : Matroid(union_of(parts)), parts_(std::move(parts)), caps_(std::move(caps)) {
    if (parts_.size() != caps_.size()) throw DomainError("partition matroid: parts/capacities length mismatch");
    std::size_t total = 0;
    for (const auto& p : parts_) total += p.size();
    if (total != ground().size()) throw DomainError("partition matroid: parts overlap");
    part_of_.assign(universe(), -1);
    for (std::size_t j = 0; j < parts_.size(); ++j) {
      parts_[j].for_each([&](Element e) { part_of_[e] = static_cast<int>(j); });
    }
    reject_loops();
  }
  std::string family() const override { return "partition"; }
  const std::vector<Subset>& parts() const { return parts_; }
  const std::vector<int>& capacities() const { return caps_; }
  int part_of(Element e) const { return part_of_.at(e); }

 protected:
  int do_rank(const Subset& s) const override {
    int r = 0;
    for (std::size_t j = 0; j < parts_.size(); ++j) {
      r += std::min(static_cast<int>(s.intersection_size(parts_[j])), caps_[j]);
    }
    return r;
  }

 private:
  static Subset union_of(const std::vector<Subset>& parts) {
    if (parts.empty()) throw DomainError("partition matroid: no parts (universe unknown)");
    Subset u(parts.front().universe());
    for (const auto& p : parts) u |= p;
    return u;
  }
  std::vector<Subset> parts_;
  std::vector<int> caps_;
  std::vector<int> part_of_;
};

/// Cycle matroid of a multigraph; element e is edge endpoints_[e].
class GraphicMatroid final : public Matroid {
 public:
  GraphicMatroid(int vertices, std::vector<std::pair<int, int>> edges)
      : Matroid(Subset::full(edges.size())), vertices_(vertices), edges_(std::move(edges)) {
    for (const auto& [u, w] : edges_) {
      if (u < 0 || w < 0 || u >= vertices_ || w >= vertices_) throw DomainError("graphic matroid: vertex out of range");
    }
    reject_loops();
  }
  std::string family() const override { return "graphic"; }
  int vertices() const { return vertices_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

 protected:
  int do_rank(const Subset& s) const override {
    std::vector<int> parent(static_cast<std::size_t>(vertices_));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    int r = 0;
    s.for_each([&](Element e) {
      int a = find(edges_[e].first), b = find(edges_[e].second);
      if (a != b) {
        parent[a] = b;
        ++r;
      }
    });
    return r;
  }

 private:
  int vertices_;
  std::vector<std::pair<int, int>> edges_;
};

/// Column matroid of vectors over GF(p), p prime (p < 2^31).
class LinearMatroid final : public Matroid {
 public:
  LinearMatroid(std::uint64_t p, std::vector<std::vector<std::int64_t>> columns)
      : Matroid(Subset::full(columns.size())), p_(p) {
    if (p < 2 || p >= (std::uint64_t{1} << 31) || !is_prime(p)) throw DomainError("linear matroid: field size must be a prime below 2^31");
    dim_ = columns.empty() ? 0 : columns.front().size();
    columns_.reserve(columns.size());
    for (const auto& c : columns) {
      if (c.size() != dim_) throw DomainError("linear matroid: columns of unequal length");
      std::vector<std::uint64_t> v(dim_);
      for (std::size_t i = 0; i < dim_; ++i) {
        std::int64_t m = c[i] % static_cast<std::int64_t>(p_);
        v[i] = static_cast<std::uint64_t>(m < 0 ? m + static_cast<std::int64_t>(p_) : m);
      }
      columns_.push_back(std::move(v));
    }
    reject_loops();
  }
  std::string family() const override { return "linear"; }
  std::uint64_t field() const { return p_; }
  std::size_t dimension() const { return dim_; }
  const std::vector<std::vector<std::uint64_t>>& columns() const { return columns_; }

  static bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) return false;
    return true;
  }

 protected:
  int do_rank(const Subset& s) const override {
    // Incremental row echelon basis; each column is reduced against it.
    std::vector<std::vector<std::uint64_t>> basis;
    std::vector<std::size_t> pivot;
    s.for_each([&](Element e) {
      if (basis.size() == dim_) return;
      std::vector<std::uint64_t> v = columns_[e];
      for (std::size_t b = 0; b < basis.size(); ++b) {
        std::uint64_t f = v[pivot[b]];
        if (f == 0) continue;
        for (std::size_t i = 0; i < dim_; ++i) v[i] = (v[i] + (p_ - f) * basis[b][i]) % p_;
      }
      std::size_t piv = 0;
      while (piv < dim_ && v[piv] == 0) ++piv;
      if (piv == dim_) return;
      std::uint64_t inv = inverse(v[piv]);
      for (auto& x : v) x = x * inv % p_;
      // Keep earlier basis vectors reduced at the new pivot.
      for (auto& bv : basis) {
        std::uint64_t f = bv[piv];
        if (f == 0) continue;
        for (std::size_t i = 0; i < dim_; ++i) bv[i] = (bv[i] + (p_ - f) * v[i]) % p_;
      }
      basis.push_back(std::move(v));
      pivot.push_back(piv);
    });
    return static_cast<int>(basis.size());
  }

  // Solves sum over f in a of c_f v_f = v_e by elimination on [A | v_e].
  Subset do_circuit(const Subset& a, Element e) const override {
    std::vector<Element> cols = a.elements();
    const std::size_t k = cols.size();
    std::vector<std::vector<std::uint64_t>> rows(dim_, std::vector<std::uint64_t>(k + 1));
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = 0; j < k; ++j) rows[i][j] = columns_[cols[j]][i];
      rows[i][k] = columns_[e][i];
    }
    std::vector<std::size_t> pivot_row(k, dim_);
    std::size_t r = 0;
    for (std::size_t j = 0; j < k && r < dim_; ++j) {
      std::size_t piv = r;
      while (piv < dim_ && rows[piv][j] == 0) ++piv;
      if (piv == dim_) continue;
      std::swap(rows[piv], rows[r]);
      std::uint64_t inv = inverse(rows[r][j]);
      for (auto& x : rows[r]) x = x * inv % p_;
      for (std::size_t i = 0; i < dim_; ++i) {
        std::uint64_t f = rows[i][j];
        if (i == r || f == 0) continue;
        for (std::size_t c = j; c <= k; ++c) rows[i][c] = (rows[i][c] + (p_ - f) * rows[r][c]) % p_;
      }
      pivot_row[j] = r++;
    }
    Subset out(universe());
    out.insert(e);
    for (std::size_t j = 0; j < k; ++j)
      if (pivot_row[j] < dim_ && rows[pivot_row[j]][k] != 0) out.insert(cols[j]);
    return out;
  }

 private:
  std::uint64_t inverse(std::uint64_t a) const {
    std::uint64_t result = 1, base = a % p_, e = p_ - 2;
    while (e) {
      if (e & 1) result = result * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return result;
  }
  std::uint64_t p_;
  std::size_t dim_ = 0;
  std::vector<std::vector<std::uint64_t>> columns_;
};

/// Disjoint union of matroids; component c occupies ids
/// [offset(c), offset(c) + components[c]->universe()).
class DirectSumMatroid final : public Matroid {
 public:
  explicit DirectSumMatroid(std::vector<MatroidPtr> components)
      : Matroid(shifted_ground(components)), components_(std::move(components)) {
    std::size_t off = 0;
    for (const auto& c : components_) {
      offsets_.push_back(off);
      off += c->universe();
    }
    for (std::size_t c = 0; c < components_.size(); ++c) {
      for (const Subset& b : components_[c]->blocks()) blocks_.push_back(lift(c, b));
    }
  }
  std::string family() const override { return "direct-sum"; }
  std::size_t component_count() const { return components_.size(); }
  const MatroidPtr& component(std::size_t c) const { return components_.at(c); }
  std::size_t offset(std::size_t c) const { return offsets_.at(c); }
  /// Component index owning universe id e.
  std::size_t component_of(Element e) const {
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), static_cast<std::size_t>(e));
    return static_cast<std::size_t>(it - offsets_.begin()) - 1;
  }
  /// Id of element e of component c in this matroid's universe.
  Element lift(std::size_t c, Element e) const { return static_cast<Element>(offsets_[c] + e); }
  Subset lift(std::size_t c, const Subset& s) const {
    Subset out(universe());
    s.for_each([&](Element e) { out.insert(lift(c, e)); });
    return out;
  }
  /// Restriction of s to component c, in the component's own universe.
  Subset slice(std::size_t c, const Subset& s) const {
    Subset out(components_[c]->universe());
    std::size_t lo = offsets_[c], hi = lo + components_[c]->universe();
    s.for_each([&](Element e) {
      auto u = static_cast<std::size_t>(e);
      if (u >= lo && u < hi) out.insert(static_cast<Element>(u - lo));
    });
    return out;
  }
  int component_rank(std::size_t c, const Subset& s) const { return components_[c]->rank(slice(c, s)); }

  std::vector<Subset> blocks() const override { return blocks_; }

 protected:
  int do_rank(const Subset& s) const override {
    int r = 0;
    for (std::size_t c = 0; c < components_.size(); ++c) {
      Subset part = slice(c, s);
      if (!part.empty()) r += components_[c]->rank(part);
    }
    return r;
  }

  Subset do_circuit(const Subset& a, Element e) const override {
    std::size_t c = component_of(e);
    return lift(c, components_[c]->circuit(slice(c, a), static_cast<Element>(static_cast<std::size_t>(e) - offsets_[c])));
  }

 private:
  static Subset shifted_ground(const std::vector<MatroidPtr>& comps) {
    std::size_t total = 0;
    for (const auto& c : comps) total += c->universe();
    Subset g(total);
    std::size_t off = 0;
    for (const auto& c : comps) {
      c->ground().for_each([&](Element e) { g.insert(static_cast<Element>(off + e)); });
      off += c->universe();
    }
    return g;
  }
  std::vector<MatroidPtr> components_;
  std::vector<std::size_t> offsets_;
  std::vector<Subset> blocks_;
};

/// Lazy minor base / contracted \ deleted, normalized to one (C, D) pair
/// over a non-minor base.
class MinorMatroid final : public Matroid {
 public:
  MinorMatroid(MatroidPtr base, Subset contracted, Subset deleted)
      : Matroid(base->ground() - contracted - deleted),
        base_(std::move(base)),
        contracted_(std::move(contracted)),
        deleted_(std::move(deleted)) {
    if (contracted_.intersects(deleted_)) throw ContractError("minor: contracted and deleted sets overlap");
    base_->check_domain(contracted_);
    base_->check_domain(deleted_);
    rank_contracted_ = base_->rank(contracted_);
    contracted_basis_ = basis_of(*base_, contracted_);
    sum_ = dynamic_cast<const DirectSumMatroid*>(base_.get());
    if (sum_) {
      for (std::size_t c = 0; c < sum_->component_count(); ++c) {
        Subset cc = sum_->slice(c, contracted_);
        component_contracted_.push_back(cc);
        component_rank_contracted_.push_back(cc.empty() ? 0 : sum_->component(c)->rank(cc));
      }
    }
  }
  std::string family() const override { return "minor"; }
  const MatroidPtr& base() const { return base_; }
  const Subset& contracted() const { return contracted_; }
  const Subset& deleted() const { return deleted_; }

  std::vector<Subset> blocks() const override {
    std::vector<Subset> out;
    for (const Subset& b : base_->blocks()) {
      Subset live = b & ground();
      if (!live.empty()) out.push_back(std::move(live));
    }
    return out;
  }

 protected:
  int do_rank(const Subset& s) const override {
    if (!sum_) return base_->rank(s | contracted_) - rank_contracted_;
    int r = 0;
    for (std::size_t c = 0; c < sum_->component_count(); ++c) {
      Subset part = sum_->slice(c, s);
      if (part.empty()) continue;
      r += sum_->component(c)->rank(part | component_contracted_[c]) - component_rank_contracted_[c];
    }
    return r;
  }

  // a plus a basis of the contracted set is independent in the base; its
  // circuit with e avoids nothing but that basis.
  Subset do_circuit(const Subset& a, Element e) const override {
    return base_->circuit(a | contracted_basis_, e) - contracted_basis_;
  }

 private:
  static Subset basis_of(const Matroid& m, const Subset& s) {
    Subset acc(m.universe());
    int r = 0;
    s.for_each([&](Element f) {
      if (m.rank(acc.with(f)) > r) {
        acc.insert(f);
        ++r;
      }
    });
    return acc;
  }

  MatroidPtr base_;
  Subset contracted_;
  Subset deleted_;
  int rank_contracted_ = 0;
  Subset contracted_basis_;
  const DirectSumMatroid* sum_ = nullptr;
  std::vector<Subset> component_contracted_;
  std::vector<int> component_rank_contracted_;
};

// ---------------------------------------------------------------------------
// Operations

inline bool is_independent(const Matroid& m, const Subset& s) {
  return m.rank(s) == static_cast<int>(s.size());
}

/// All ground elements spanned by s; a flat containing s.
inline Subset closure(const Matroid& m, const Subset& s) {
  int r = m.rank(s);
  Subset out = s;
  (m.ground() - s).for_each([&](Element e) {
    if (m.rank(s.with(e)) == r) out.insert(e);
  });
  return out;
}

/// The unique circuit inside a + e, where a is independent and a + e is not.
inline Subset fundamental_circuit(const Matroid& m, const Subset& a, Element e) {
  m.check_domain(a);
  if (!m.ground().contains(e)) throw DomainError("fundamental_circuit: element outside ground set");
  if (a.contains(e)) throw ContractError("fundamental_circuit: element already in the independent set");
  if (m.rank(a) != static_cast<int>(a.size())) throw ContractError("fundamental_circuit: set is not independent");
  Subset ae = a.with(e);
  int r = static_cast<int>(a.size());
  if (m.rank(ae) != r) throw ContractError("fundamental_circuit: a + e is independent");
  return m.circuit(a, e);
}

/// Maximal independent subset of s, scanning ids in ascending order.
inline Subset greedy_maximal_independent(const Matroid& m, const Subset& s) {
  m.check_domain(s);
  Subset acc(m.universe());
  int r = 0;
  s.for_each([&](Element e) {
    if (m.rank(acc.with(e)) > r) {
      acc.insert(e);
      ++r;
    }
  });
  return acc;
}

/// Minor of m with extra contracted set c and deleted set d, flattened onto
/// m's non-minor base.
inline MatroidPtr minor(const MatroidPtr& m, const Subset& c, const Subset& d) {
  m->check_domain(c);
  m->check_domain(d);
  if (c.intersects(d)) throw ContractError("minor: contracted and deleted sets overlap");
  if (const auto* mm = dynamic_cast<const MinorMatroid*>(m.get())) {
    return std::make_shared<MinorMatroid>(mm->base(), mm->contracted() | c, mm->deleted() | d);
  }
  return std::make_shared<MinorMatroid>(m, c, d);
}
inline MatroidPtr contraction(const MatroidPtr& m, const Subset& s) { return minor(m, s, Subset(m->universe())); }
inline MatroidPtr deletion(const MatroidPtr& m, const Subset& s) { return minor(m, Subset(m->universe()), s); }
inline MatroidPtr restriction(const MatroidPtr& m, const Subset& s) {
  m->check_domain(s);
  return deletion(m, m->ground() - s);
}

inline MatroidPtr direct_sum(std::vector<MatroidPtr> ms) {
  if (ms.size() == 1) return ms.front();
  return std::make_shared<DirectSumMatroid>(std::move(ms));
}
/// Disjoint union of q copies of m; copy c of element e has id c * universe + e.
inline MatroidPtr q_copies(const MatroidPtr& m, int q) {
  if (q < 1) throw DomainError("q_copies: q must be positive");
  return std::make_shared<DirectSumMatroid>(std::vector<MatroidPtr>(static_cast<std::size_t>(q), m));
}

}  // namespace matcolor
