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

// Exact rational numbers with a 64-bit fast path.
//
// Values whose numerator and denominator fit in int64 are stored inline and
// combined with 128-bit intermediates; anything larger is promoted to a GMP
// mpq_class and demoted again as soon as it fits.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace matcolor {

class Rational {
 public:
  Rational() = default;
  template <std::signed_integral T>
  Rational(T value) : num_(static_cast<std::int64_t>(value)) {}  // NOLINT(google-explicit-constructor)
  Rational(long long num, long long den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    set_reduced(static_cast<__int128>(num), static_cast<__int128>(den));
  }
  explicit Rational(const mpq_class& q) { assign_big(q); }

  Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;

  /// Parses "a", "-a" or "a/b" (arbitrary size).
  static Rational parse(std::string_view text) {
    mpq_class q;
    std::string s(text);
    if (s.empty() || q.set_str(s, 10) != 0) {
      throw std::invalid_argument("Rational: cannot parse '" + s + "'");
    }
    if (q.get_den() == 0) throw std::domain_error("Rational: zero denominator");
    q.canonicalize();
    return Rational(q);
  }

  bool is_small() const { return !big_; }
  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }
  int sign() const {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
  }

  mpq_class to_mpq() const {
    if (big_) return *big_;
    mpq_class q(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
    return q;
  }
  double to_double() const {
    return big_ ? big_->get_d() : static_cast<double>(num_) / static_cast<double>(den_);
  }
  std::string to_string() const {
    if (big_) return big_->get_str(10);
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }
  /// Numerator / denominator as decimal strings.
  std::string num_string() const {
    return big_ ? big_->get_num().get_str(10) : std::to_string(num_);
  }
  std::string den_string() const {
    return big_ ? big_->get_den().get_str(10) : std::to_string(den_);
  }
  /// Small-path accessors; only valid when is_small().
  std::int64_t small_num() const { return num_; }
  std::int64_t small_den() const { return den_; }

  Rational floor() const {
    if (big_) {
      mpz_class f;
      mpz_fdiv_q(f.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
      return Rational(mpq_class(f));
    }
    std::int64_t q = num_ / den_;
    if ((num_ % den_ != 0) && (num_ < 0)) --q;
    return Rational(static_cast<long long>(q));
  }
  Rational ceil() const { return -((-*this).floor()); }
  Rational abs() const { return sign() < 0 ? -*this : *this; }

  Rational operator-() const {
    if (big_) return Rational(mpq_class(-*big_));
    if (num_ == INT64_MIN) return Rational(mpq_class(-to_mpq()));
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.den_ == b.den_) {
        Rational r;
        r.set_reduced(static_cast<__int128>(a.num_) + b.num_, a.den_);
        return r;
      }
      Rational r;
      r.set_reduced(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                    static_cast<__int128>(a.den_) * b.den_);
      return r;
    }
    return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      Rational r;
      r.set_reduced(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                    static_cast<__int128>(a.den_) * b.den_);
      return r;
    }
    return Rational(mpq_class(a.to_mpq() - b.to_mpq()));
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.num_ == 0 || b.num_ == 0) return Rational();
      Rational r;
      r.set_reduced(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
      return r;
    }
    return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    if (!a.big_ && !b.big_) {
      Rational r;
      r.set_reduced(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
      return r;
    }
    return Rational(mpq_class(a.to_mpq() / b.to_mpq()));
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // canonical forms differ in representation
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      __int128 l = static_cast<__int128>(a.num_) * b.den_;
      __int128 r = static_cast<__int128>(b.num_) * a.den_;
      return l <=> r;
    }
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::size_t hash() const {
    if (big_) return std::hash<std::string>{}(big_->get_str(16));
    return std::hash<std::int64_t>{}(num_) * 1000003u ^ std::hash<std::int64_t>{}(den_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  static unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) {
    constexpr unsigned __int128 kWord = ~std::uint64_t{0};
    if (a <= kWord && b <= kWord) return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    while (b != 0) {
      if (a <= kWord && b <= kWord) return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
      unsigned __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  // Stores num/den (den != 0) in canonical form, promoting if needed.
  void set_reduced(__int128 num, __int128 den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    if (num == 0) {
      num_ = 0;
      den_ = 1;
      big_.reset();
      return;
    }
    unsigned __int128 un = num < 0 ? static_cast<unsigned __int128>(-num) : static_cast<unsigned __int128>(num);
    unsigned __int128 g = den == 1 ? 1 : gcd128(un, static_cast<unsigned __int128>(den));
    if (g > 1) {
      num /= static_cast<__int128>(g);
      den /= static_cast<__int128>(g);
    }
    if (num >= INT64_MIN && num <= INT64_MAX && den <= INT64_MAX) {
      num_ = static_cast<std::int64_t>(num);
      den_ = static_cast<std::int64_t>(den);
      big_.reset();
      return;
    }
    big_ = std::make_unique<mpq_class>(to_mpz(num), to_mpz(den));
    big_->canonicalize();
  }

  static mpz_class to_mpz(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(u >> 64));
    mpz_class lo(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFULL));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
  }

  void assign_big(const mpq_class& q) {
    if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
      num_ = q.get_num().get_si();
      den_ = q.get_den().get_si();
      big_.reset();
      return;
    }
    big_ = std::make_unique<mpq_class>(q);
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace matcolor

template <>
struct std::hash<matcolor::Rational> {
  std::size_t operator()(const matcolor::Rational& r) const { return r.hash(); }
};
