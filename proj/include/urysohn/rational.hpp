// Copyright 2026 The urysohn Authors
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

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace urysohn {

/// Exact rational number in lowest terms (denominator > 0).
class Rat {
 public:
  Rat() = default;
  Rat(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rat(long num, long den) : v_(num, den) {
    if (den == 0) throw std::domain_error("zero denominator");
    v_.canonicalize();
  }
  Rat(const mpz_class& num, const mpz_class& den) : v_(num, den) {
    if (den == 0) throw std::domain_error("zero denominator");
    v_.canonicalize();
  }
  explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Accepts `int` or `int/posint`; surrounding blanks are not allowed.
  static Rat parse(std::string_view text) {
    auto bad = [&] { return std::invalid_argument("malformed rational '" + std::string(text) + "'"); };
    if (text.empty()) throw bad();
    auto slash = text.find('/');
    auto digits_ok = [](std::string_view s, bool allow_sign) {
      if (s.empty()) return false;
      std::size_t i = 0;
      if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
      if (i == s.size()) return false;
      for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
      return true;
    };
    std::string_view num = text.substr(0, slash);
    if (!digits_ok(num, true)) throw bad();
    std::string ns(num.front() == '+' ? num.substr(1) : num);
    if (slash == std::string_view::npos) return Rat(mpq_class(mpz_class(ns), 1));
    std::string_view den = text.substr(slash + 1);
    if (!digits_ok(den, false)) throw bad();
    mpz_class d{std::string(den)};
    if (d == 0) throw bad();
    return Rat(mpz_class(ns), d);
  }

  [[nodiscard]] mpz_class num() const { return v_.get_num(); }
  [[nodiscard]] mpz_class den() const { return v_.get_den(); }
  [[nodiscard]] const mpq_class& raw() const { return v_; }
  [[nodiscard]] int sign() const { return sgn(v_); }
  [[nodiscard]] bool is_integer() const { return v_.get_den() == 1; }
  [[nodiscard]] double to_double() const { return v_.get_d(); }

  [[nodiscard]] mpz_class floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
  }
  [[nodiscard]] mpz_class ceil() const {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
  }

  /// Always `p/q`, including integers (`2/1`).
  [[nodiscard]] std::string str() const { return num().get_str() + "/" + den().get_str(); }

  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.sign() == 0) throw std::domain_error("division by zero");
    v_ /= o.v_;
    return *this;
  }
  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.v_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

 private:
  mpq_class v_{0};
};

inline Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }

/// Rational extended by +inf; used for ray endpoints and empty infima.
class XRat {
 public:
  XRat() = default;
  XRat(Rat v) : v_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  XRat(long v) : v_(Rat(v)) {}       // NOLINT(google-explicit-constructor)
  static XRat infinity() { return XRat(std::nullopt); }

  [[nodiscard]] bool is_inf() const { return !v_.has_value(); }
  [[nodiscard]] const Rat& value() const {
    if (!v_) throw std::logic_error("infinite XRat has no finite value");
    return *v_;
  }
  [[nodiscard]] std::string str() const { return v_ ? v_->str() : "inf"; }

  friend bool operator==(const XRat& a, const XRat& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const XRat& a, const XRat& b) {
    if (a.is_inf() || b.is_inf()) {
      if (a.is_inf() && b.is_inf()) return std::strong_ordering::equal;
      return a.is_inf() ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return *a.v_ <=> *b.v_;
  }
  friend XRat operator+(const XRat& a, const XRat& b) {
    if (a.is_inf() || b.is_inf()) return infinity();
    return XRat(*a.v_ + *b.v_);
  }
  friend std::ostream& operator<<(std::ostream& os, const XRat& r) { return os << r.str(); }

 private:
  explicit XRat(std::nullopt_t) : v_(std::nullopt) {}
  std::optional<Rat> v_{Rat(0)};
};

/// Parse `int`, `int/posint` or `inf`.
inline XRat parse_xrat(std::string_view text) {
  if (text == "inf") return XRat::infinity();
  return XRat(Rat::parse(text));
}

/// The rational with least denominator in the interval {lo,hi} (ties: least
/// value).  `hi` may be +inf.  Returns nullopt when the interval is empty.
inline std::optional<Rat> simplest_in(const Rat& lo, bool lo_closed, const XRat& hi, bool hi_closed) {
  if (!hi.is_inf()) {
    if (lo > hi.value()) return std::nullopt;
    if (lo == hi.value()) {
      if (lo_closed && hi_closed) return lo;
      return std::nullopt;
    }
  }
  mpz_class n = lo_closed ? lo.ceil() : lo.floor() + 1;
  Rat nr(n, mpz_class(1));
  if (hi.is_inf() || nr < hi.value() || (nr == hi.value() && hi_closed)) return nr;
  // No integer inside: the interval sits in (f, f+1).
  mpz_class f = lo.floor();
  Rat fr(f, mpz_class(1));
  Rat lo_frac = lo - fr;
  Rat hi_frac = hi.value() - fr;
  XRat inv_hi = lo_frac.sign() == 0 ? XRat::infinity() : XRat(Rat(1) / lo_frac);
  auto x = simplest_in(Rat(1) / hi_frac, hi_closed, inv_hi, lo_closed);
  if (!x) return std::nullopt;
  return fr + Rat(1) / *x;
}

}  // namespace urysohn

template <>
struct std::hash<urysohn::Rat> {
  std::size_t operator()(const urysohn::Rat& r) const noexcept {
    return std::hash<std::string>{}(r.str());
  }
};
