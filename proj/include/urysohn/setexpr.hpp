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

// Recursive-descent parser for distance-set expressions:
//
//   setexpr  := term ( "u" term )*
//   term     := "{" rat ("," rat)* "}"
//             | ["Q"] lbr rat "," (rat | "inf") rbr     lbr in "[(", rbr in "])"
//             | "omega" "(" nat ")"
//             | "sumclosed" "(" rat ("," rat)* ";" ["<"] (rat | "inf") ")"
//   rat      := int | int "/" posint
//
// A "Q" prefix denotes the rationals of the interval; "<" makes the
// sum-closure cap exclusive.  Whitespace is ignored.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "urysohn/distance_set.hpp"
#include "urysohn/error.hpp"

namespace urysohn {

namespace detail {

class SetExprParser {
 public:
  explicit SetExprParser(std::string_view text) : text_(text) {}

  DistanceSet parse() {
    std::vector<Term> terms;
    terms.push_back(term());
    skip_ws();
    while (pos_ < text_.size()) {
      expect('u');
      terms.push_back(term());
      skip_ws();
    }
    return combine(terms);
  }

 private:
  struct Term {
    enum class Kind { Points, Interval, Omega, Sum } kind;
    std::vector<Rat> points;
    Component comp;
    std::uint64_t omega = 0;
    std::vector<Rat> gens;
    XRat cap;
    bool cap_included = true;
    std::size_t at = 0;
  };

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  bool keyword(std::string_view kw) {
    skip_ws();
    if (text_.substr(pos_, kw.size()) == kw) {
      pos_ += kw.size();
      return true;
    }
    return false;
  }

  std::string digits() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  Rat rat() {
    skip_ws();
    bool neg = false;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    std::size_t at = pos_;
    std::string n = digits();
    if (neg) fail("negative distance");
    if (peek('/')) {
      ++pos_;
      std::size_t dat = pos_;
      std::string d = digits();
      if (mpz_class(d) == 0) throw ParseError(dat, "zero denominator");
      return Rat(mpz_class(n), mpz_class(d));
    }
    (void)at;
    return Rat(mpz_class(n), mpz_class(1));
  }

  XRat rat_or_inf() {
    if (keyword("inf")) return XRat::infinity();
    return XRat(rat());
  }

  Term term() {
    skip_ws();
    Term t;
    t.at = pos_;
    if (peek('{')) {
      ++pos_;
      t.kind = Term::Kind::Points;
      t.points.push_back(rat());
      while (peek(',')) {
        ++pos_;
        t.points.push_back(rat());
      }
      expect('}');
      return t;
    }
    if (keyword("omega")) {
      t.kind = Term::Kind::Omega;
      expect('(');
      t.omega = std::stoull(digits());
      expect(')');
      return t;
    }
    if (keyword("sumclosed")) {
      t.kind = Term::Kind::Sum;
      expect('(');
      t.gens.push_back(rat());
      while (peek(',')) {
        ++pos_;
        t.gens.push_back(rat());
      }
      expect(';');
      if (peek('<')) {
        ++pos_;
        t.cap_included = false;
      }
      t.cap = rat_or_inf();
      expect(')');
      for (const auto& g : t.gens)
        if (g.sign() == 0) throw ParseError(t.at, "sum-closure generator must be positive");
      return t;
    }
    bool rational = keyword("Q");
    t.kind = Term::Kind::Interval;
    skip_ws();
    if (pos_ >= text_.size() || (text_[pos_] != '[' && text_[pos_] != '(')) fail("expected a term");
    t.comp.lo_closed = text_[pos_++] == '[';
    t.comp.lo = rat();
    expect(',');
    t.comp.hi = rat_or_inf();
    skip_ws();
    if (pos_ >= text_.size() || (text_[pos_] != ']' && text_[pos_] != ')')) fail("expected ']' or ')'");
    t.comp.hi_closed = text_[pos_++] == ']';
    t.comp.rational = rational;
    if (t.comp.hi.is_inf() && t.comp.hi_closed) throw ParseError(pos_ - 1, "'inf' must be closed by ')'");
    if (!t.comp.hi.is_inf()) {
      const Rat& hi = t.comp.hi.value();
      if (hi < t.comp.lo || (hi == t.comp.lo && !(t.comp.lo_closed && t.comp.hi_closed)))
        throw EmptyInterval(t.comp.str());
    }
    return t;
  }

  static DistanceSet combine(const std::vector<Term>& terms) {
    if (terms.size() == 1) {
      const Term& t = terms.front();
      if (t.kind == Term::Kind::Omega) return DistanceSet::omega(t.omega);
      if (t.kind == Term::Kind::Sum) return DistanceSet::sum_closure(t.gens, t.cap, t.cap_included);
    }
    bool any_interval = false;
    for (const auto& t : terms) any_interval |= t.kind == Term::Kind::Interval;
    std::vector<Rat> points;
    std::vector<Component> comps;
    for (const auto& t : terms) {
      switch (t.kind) {
        case Term::Kind::Points:
          points.insert(points.end(), t.points.begin(), t.points.end());
          break;
        case Term::Kind::Interval:
          comps.push_back(t.comp);
          break;
        case Term::Kind::Omega:
          for (std::uint64_t i = 0; i < t.omega; ++i) points.emplace_back(static_cast<long>(i));
          break;
        case Term::Kind::Sum: {
          if (t.cap.is_inf())
            throw ParseError(t.at, "an unbounded sum closure cannot be united with other terms");
          auto s = DistanceSet::sum_closure(t.gens, t.cap, t.cap_included);
          auto f = s.finite_points();
          points.insert(points.end(), f->begin(), f->end());
          break;
        }
      }
    }
    if (!any_interval) return DistanceSet::finite(std::move(points));
    for (const auto& p : points) comps.push_back(Component::point(p));
    return DistanceSet::intervals(std::move(comps));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a distance-set expression; throws ParseError ("SyntaxError"),
/// ZeroMissing or EmptyInterval.
inline DistanceSet parse_setexpr(std::string_view text) { return detail::SetExprParser(text).parse(); }

}  // namespace urysohn
