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

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace matcolor {

using Element = int;

/// Fixed-width bit vector over element ids 0..universe-1.
///
/// All binary operations require both operands to share the same universe
/// size. The cardinality is maintained incrementally.
class Subset {
 public:
  Subset() = default;
  explicit Subset(std::size_t universe) : n_(universe), words_((universe + 63) / 64, 0) {}
  Subset(std::size_t universe, std::initializer_list<Element> elems) : Subset(universe) {
    for (Element e : elems) insert(e);
  }
  template <typename Range>
  static Subset of(std::size_t universe, const Range& elems) {
    Subset s(universe);
    for (Element e : elems) s.insert(e);
    return s;
  }
  static Subset full(std::size_t universe) {
    Subset s(universe);
    for (std::size_t i = 0; i < s.words_.size(); ++i) s.words_[i] = ~std::uint64_t{0};
    s.trim();
    s.count_ = universe;
    return s;
  }

  std::size_t universe() const { return n_; }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains(Element e) const {
    check(e);
    return (words_[e >> 6] >> (e & 63)) & 1u;
  }
  void insert(Element e) {
    check(e);
    std::uint64_t& w = words_[e >> 6];
    std::uint64_t bit = std::uint64_t{1} << (e & 63);
    if (!(w & bit)) {
      w |= bit;
      ++count_;
    }
  }
  void erase(Element e) {
    check(e);
    std::uint64_t& w = words_[e >> 6];
    std::uint64_t bit = std::uint64_t{1} << (e & 63);
    if (w & bit) {
      w &= ~bit;
      --count_;
    }
  }
  Subset with(Element e) const {
    Subset s = *this;
    s.insert(e);
    return s;
  }
  Subset without(Element e) const {
    Subset s = *this;
    s.erase(e);
    return s;
  }

  Subset& operator|=(const Subset& o) { return apply(o, [](auto a, auto b) { return a | b; }); }
  Subset& operator&=(const Subset& o) { return apply(o, [](auto a, auto b) { return a & b; }); }
  Subset& operator-=(const Subset& o) { return apply(o, [](auto a, auto b) { return a & ~b; }); }
  Subset& operator^=(const Subset& o) { return apply(o, [](auto a, auto b) { return a ^ b; }); }
  friend Subset operator|(Subset a, const Subset& b) { return a |= b; }
  friend Subset operator&(Subset a, const Subset& b) { return a &= b; }
  friend Subset operator-(Subset a, const Subset& b) { return a -= b; }
  friend Subset operator^(Subset a, const Subset& b) { return a ^= b; }

  bool is_subset_of(const Subset& o) const {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  bool intersects(const Subset& o) const {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }
  std::size_t intersection_size(const Subset& o) const {
    same_universe(o);
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] & o.words_[i]);
    return c;
  }

  friend bool operator==(const Subset& a, const Subset& b) { return a.n_ == b.n_ && a.words_ == b.words_; }

  /// Orders by sorted element-id sequence (lexicographic), shorter prefix first.
  friend bool lex_less(const Subset& a, const Subset& b) {
    auto ea = a.elements();
    auto eb = b.elements();
    return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        int b = std::countr_zero(w);
        f(static_cast<Element>(i * 64 + b));
        w &= w - 1;
      }
    }
  }
  std::vector<Element> elements() const {
    std::vector<Element> out;
    out.reserve(count_);
    for_each([&](Element e) { out.push_back(e); });
    return out;
  }
  /// Smallest element, or -1 if empty.
  Element first() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return static_cast<Element>(i * 64 + std::countr_zero(words_[i]));
    return -1;
  }

  std::size_t hash() const {
    std::size_t h = n_ * 0x9E3779B97F4A7C15ULL;
    for (auto w : words_) h ^= std::hash<std::uint64_t>{}(w) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    return h;
  }
  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  void check(Element e) const {
    if (e < 0 || static_cast<std::size_t>(e) >= n_) {
      throw std::out_of_range("Subset: element " + std::to_string(e) + " outside universe of size " +
                              std::to_string(n_));
    }
  }
  void same_universe(const Subset& o) const {
    if (o.n_ != n_) throw std::invalid_argument("Subset: universe size mismatch");
  }
  template <typename Op>
  Subset& apply(const Subset& o, Op op) {
    same_universe(o);
    count_ = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      words_[i] = op(words_[i], o.words_[i]);
      count_ += std::popcount(words_[i]);
    }
    return *this;
  }
  void trim() {
    if (n_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
  std::size_t count_ = 0;
};

struct SubsetHash {
  std::size_t operator()(const Subset& s) const { return s.hash(); }
};

/// Opaque element labels bijectively mapped to dense ids 0..n-1.
class GroundSet {
 public:
  GroundSet() = default;
  explicit GroundSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (!index_.emplace(labels_[i], static_cast<Element>(i)).second) {
        throw std::invalid_argument("GroundSet: duplicate label '" + labels_[i] + "'");
      }
    }
  }
  /// Ground set labelled "0".."n-1".
  static GroundSet indexed(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    return GroundSet(std::move(labels));
  }

  std::size_t size() const { return labels_.size(); }
  const std::string& label(Element e) const { return labels_.at(static_cast<std::size_t>(e)); }
  const std::vector<std::string>& labels() const { return labels_; }
  bool has(const std::string& label) const { return index_.count(label) != 0; }
  Element id(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw std::out_of_range("GroundSet: unknown label '" + label + "'");
    return it->second;
  }
  Subset subset(const std::vector<std::string>& labels) const {
    Subset s(size());
    for (const auto& l : labels) s.insert(id(l));
    return s;
  }
  std::vector<std::string> labels_of(const Subset& s) const {
    std::vector<std::string> out;
    s.for_each([&](Element e) { out.push_back(label(e)); });
    return out;
  }
  Subset all() const { return Subset::full(size()); }

  friend bool operator==(const GroundSet& a, const GroundSet& b) { return a.labels_ == b.labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, Element> index_;
};

}  // namespace matcolor
