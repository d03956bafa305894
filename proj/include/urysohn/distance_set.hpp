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

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "urysohn/error.hpp"
#include "urysohn/rational.hpp"

namespace urysohn {

class ZeroMissing : public Error {
 public:
  ZeroMissing() : Error("ZeroMissing", "distance set must contain 0") {}
};

class EmptyInterval : public Error {
 public:
  explicit EmptyInterval(const std::string& what) : Error("EmptyInterval", "empty interval " + what) {}
};

/// One maximal piece of an interval union.  A point is lo == hi with both
/// ends closed.  `rational` marks the rationals of the interval only.
struct Component {
  Rat lo;
  XRat hi;
  bool lo_closed = true;
  bool hi_closed = true;
  bool rational = false;

  static Component point(const Rat& p) { return {p, XRat(p), true, true, false}; }

  [[nodiscard]] bool is_point() const { return !hi.is_inf() && hi.value() == lo; }
  [[nodiscard]] bool contains(const Rat& q) const {
    if (q < lo || (q == lo && !lo_closed)) return false;
    if (hi.is_inf()) return true;
    return q < hi.value() || (q == hi.value() && hi_closed);
  }
  [[nodiscard]] std::string str() const {
    if (is_point()) return "{" + lo.str() + "}";
    return std::string(rational ? "Q" : "") + (lo_closed ? "[" : "(") + lo.str() + "," + hi.str() +
           (hi_closed ? "]" : ")");
  }
  friend bool operator==(const Component&, const Component&) = default;
};

/// Closed-or-open window {lo, hi} used for range queries.
struct Window {
  Rat lo;
  bool lo_closed = true;
  XRat hi;
  bool hi_closed = true;

  static Window closed(const Rat& lo, const XRat& hi) { return {lo, true, hi, !hi.is_inf()}; }
  static Window open(const Rat& lo, const XRat& hi) { return {lo, false, hi, false}; }
  [[nodiscard]] bool contains(const Rat& q) const {
    return Component{lo, hi, lo_closed, hi_closed && !hi.is_inf(), false}.contains(q);
  }
  [[nodiscard]] bool empty() const {
    if (hi.is_inf()) return false;
    return lo > hi.value() || (lo == hi.value() && !(lo_closed && hi_closed));
  }
};

struct FiniteSet {
  std::vector<Rat> points;  // sorted, distinct
  friend bool operator==(const FiniteSet&, const FiniteSet&) = default;
};
struct IntervalUnion {
  std::vector<Component> comps;  // sorted, disjoint, not mergeable
  friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;
};
struct OmegaSegment {
  std::uint64_t n = 1;  // {0,...,n-1}
  friend bool operator==(const OmegaSegment&, const OmegaSegment&) = default;
};
/// Additive closure of the generators and 0, cut at the cap.
struct SumClosure {
  std::vector<Rat> generators;  // positive, sorted, distinct
  XRat cap;
  bool cap_included = true;
  friend bool operator==(const SumClosure&, const SumClosure&) = default;
};

/// Points of a set; `bound` is set when an infinite discrete set was
/// enumerated only up to (and including) that value.
struct PointList {
  std::vector<Rat> points;
  std::optional<Rat> bound;
};

struct SetTrait {
  bool countable = false;
  bool closed = false;
  bool zero_limit = false;
  std::string countable_note, closed_note, zero_limit_note;
};

namespace detail {

inline mpz_class lcm_of_dens(const std::vector<Rat>& v) {
  mpz_class l = 1;
  for (const auto& r : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r.den().get_mpz_t());
  return l;
}

/// Reachable nonnegative integer combinations of `gens` up to `limit`.
inline std::vector<bool> reachable(const std::vector<unsigned long>& gens, unsigned long limit) {
  constexpr unsigned long kMax = 50'000'000;
  if (limit > kMax) throw Error("SearchBudget", "sum-closure enumeration beyond " + std::to_string(kMax) + " steps");
  std::vector<bool> r(limit + 1, false);
  r[0] = true;
  for (unsigned long v = 1; v <= limit; ++v)
    for (auto g : gens)
      if (g <= v && r[v - g]) { r[v] = true; break; }
  return r;
}

// Merges two overlapping/touching components of the same kind.
inline bool mergeable(const Component& a, const Component& b) {
  // a.lo <= b.lo assumed
  if (a.hi.is_inf()) return true;
  const Rat& ahi = a.hi.value();
  if (ahi > b.lo) return true;
  return ahi == b.lo && (a.hi_closed || b.lo_closed);
}

}  // namespace detail

/// A candidate distance set R (always containing 0).
class DistanceSet {
 public:
  using Rep = std::variant<FiniteSet, IntervalUnion, OmegaSegment, SumClosure>;

  static DistanceSet finite(std::vector<Rat> pts) {
    for (const auto& p : pts)
      if (p.sign() < 0) throw std::invalid_argument("distances must be nonnegative");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.empty() || pts.front().sign() != 0) throw ZeroMissing();
    return DistanceSet(FiniteSet{std::move(pts)});
  }

  static DistanceSet omega(std::uint64_t n) {
    if (n == 0) throw ZeroMissing();
    return DistanceSet(OmegaSegment{n});
  }

  static DistanceSet sum_closure(std::vector<Rat> gens, XRat cap, bool cap_included) {
    for (const auto& g : gens)
      if (g.sign() <= 0) throw std::invalid_argument("sum-closure generators must be positive");
    if (gens.empty()) throw std::invalid_argument("sum-closure needs a generator");
    if (!cap.is_inf() && (cap.value().sign() < 0 || (cap.value().sign() == 0 && !cap_included))) throw ZeroMissing();
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    return DistanceSet(SumClosure{std::move(gens), std::move(cap), cap.is_inf() ? false : cap_included});
  }

  /// Normalizes: sorts, merges overlapping/touching pieces of the same kind,
  /// absorbs points, turns [a,a] into a point.  A rational piece may not
  /// overlap or touch a real one.
  static DistanceSet intervals(std::vector<Component> comps) {
    std::vector<Component> pieces;
    for (auto c : comps) {
      if (c.lo.sign() < 0) throw std::invalid_argument("distances must be nonnegative");
      if (c.hi.is_inf()) c.hi_closed = false;
      if (!c.hi.is_inf()) {
        if (c.hi.value() < c.lo) throw EmptyInterval(c.str());
        if (c.hi.value() == c.lo) {
          if (!(c.lo_closed && c.hi_closed)) throw EmptyInterval(c.str());
          c.rational = false;
        }
      }
      pieces.push_back(c);
    }
    auto by_lo = [](const Component& a, const Component& b) {
      if (a.lo != b.lo) return a.lo < b.lo;
      return a.lo_closed && !b.lo_closed;
    };
    std::sort(pieces.begin(), pieces.end(), by_lo);

    // Points first get absorbed by any covering or touching piece.
    std::vector<Component> solid, points;
    for (auto& c : pieces) (c.is_point() ? points : solid).push_back(c);
    for (const auto& a : solid)
      for (const auto& b : solid)
        if (&a != &b && a.rational != b.rational) {
          const Component& first = by_lo(a, b) ? a : b;
          const Component& second = by_lo(a, b) ? b : a;
          if (detail::mergeable(first, second) ||
              (!first.hi.is_inf() && first.hi.value() == second.lo))
            throw std::invalid_argument("rational piece " + (a.rational ? a : b).str() +
                                        " overlaps or touches real piece " + (a.rational ? b : a).str());
        }
    std::vector<Component> merged;
    for (const auto& c : solid) {
      if (!merged.empty() && merged.back().rational == c.rational && detail::mergeable(merged.back(), c)) {
        auto& m = merged.back();
        if (!m.hi.is_inf() && (c.hi.is_inf() || c.hi.value() > m.hi.value())) {
          m.hi = c.hi;
          m.hi_closed = c.hi_closed;
        } else if (!m.hi.is_inf() && !c.hi.is_inf() && c.hi.value() == m.hi.value()) {
          m.hi_closed = m.hi_closed || c.hi_closed;
        }
        if (m.lo == c.lo) m.lo_closed = m.lo_closed || c.lo_closed;
      } else {
        merged.push_back(c);
      }
    }
    for (const auto& p : points) {
      bool absorbed = false;
      for (auto& m : merged) {
        if (m.contains(p.lo)) { absorbed = true; break; }
        if (m.lo == p.lo && !m.lo_closed) { m.lo_closed = true; absorbed = true; break; }
        if (!m.hi.is_inf() && m.hi.value() == p.lo && !m.hi_closed) { m.hi_closed = true; absorbed = true; break; }
      }
      if (!absorbed) merged.push_back(p);
    }
    std::sort(merged.begin(), merged.end(), by_lo);
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    DistanceSet r{IntervalUnion{std::move(merged)}};
    if (!r.contains(Rat(0))) throw ZeroMissing();
    return r;
  }

  [[nodiscard]] const Rep& rep() const { return rep_; }
  template <class T>
  [[nodiscard]] const T* as() const { return std::get_if<T>(&rep_); }

  friend bool operator==(const DistanceSet&, const DistanceSet&) = default;

  [[nodiscard]] bool contains(const Rat& q) const {
    if (q.sign() < 0) return false;
    return std::visit([&](const auto& s) { return contains_impl(s, q); }, rep_);
  }

  /// Finite sets list their points; other representations return nullopt.
  [[nodiscard]] std::optional<std::vector<Rat>> finite_points() const {
    if (auto f = as<FiniteSet>()) return f->points;
    if (auto o = as<OmegaSegment>()) {
      std::vector<Rat> v;
      for (std::uint64_t i = 0; i < o->n; ++i) v.emplace_back(static_cast<long>(i));
      return v;
    }
    if (auto s = as<SumClosure>(); s && !s->cap.is_inf()) return sum_elements(*s, s->cap.value()).points;
    return std::nullopt;
  }

  [[nodiscard]] std::string str() const {
    return std::visit([](const auto& s) { return str_impl(s); }, rep_);
  }

  /// Elements of a sum closure up to `bound` (inclusive, and within cap).
  static PointList sum_elements(const SumClosure& s, const Rat& bound) {
    Rat top = bound;
    if (!s.cap.is_inf() && s.cap.value() < top) top = s.cap.value();
    mpz_class l = detail::lcm_of_dens(s.generators);
    std::vector<unsigned long> g;
    for (const auto& x : s.generators) g.push_back(mpz_class(x.num() * (l / x.den())).get_ui());
    Rat scaled_top = top * Rat(l, mpz_class(1));
    if (scaled_top.sign() < 0) return {};
    unsigned long lim = mpz_class(scaled_top.floor()).get_ui();
    auto r = detail::reachable(g, lim);
    PointList out;
    for (unsigned long v = 0; v <= lim; ++v) {
      if (!r[v]) continue;
      Rat q(mpz_class(v), l);
      if (!s.cap.is_inf() && q == s.cap.value() && !s.cap_included) continue;
      out.points.push_back(q);
    }
    if (s.cap.is_inf() || bound < s.cap.value()) out.bound = bound;
    return out;
  }

 private:
  explicit DistanceSet(Rep r) : rep_(std::move(r)) {}

  static bool contains_impl(const FiniteSet& s, const Rat& q) {
    return std::binary_search(s.points.begin(), s.points.end(), q);
  }
  static bool contains_impl(const IntervalUnion& s, const Rat& q) {
    return std::any_of(s.comps.begin(), s.comps.end(), [&](const Component& c) { return c.contains(q); });
  }
  static bool contains_impl(const OmegaSegment& s, const Rat& q) {
    return q.is_integer() && q.num() < mpz_class(std::to_string(s.n));
  }
  static bool contains_impl(const SumClosure& s, const Rat& q) {
    if (!s.cap.is_inf()) {
      if (q > s.cap.value() || (q == s.cap.value() && !s.cap_included)) return false;
    }
    mpz_class l = detail::lcm_of_dens(s.generators);
    Rat scaled = q * Rat(l, mpz_class(1));
    if (!scaled.is_integer()) return false;
    std::vector<unsigned long> g;
    for (const auto& x : s.generators) g.push_back(mpz_class(x.num() * (l / x.den())).get_ui());
    return detail::reachable(g, scaled.num().get_ui()).back();
  }

  static std::string join(const std::vector<Rat>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
    return s;
  }
  static std::string str_impl(const FiniteSet& s) { return "{" + join(s.points) + "}"; }
  static std::string str_impl(const IntervalUnion& s) {
    std::string out;
    for (std::size_t i = 0; i < s.comps.size(); ++i) out += (i ? " u " : "") + s.comps[i].str();
    return out;
  }
  static std::string str_impl(const OmegaSegment& s) { return "omega(" + std::to_string(s.n) + ")"; }
  static std::string str_impl(const SumClosure& s) {
    return "sumclosed(" + join(s.generators) + ";" + (s.cap_included || s.cap.is_inf() ? "" : "<") + s.cap.str() + ")";
  }

  Rep rep_;
};

// ---------------------------------------------------------------------------
// Order-topological queries.

inline bool has_zero_limit(const DistanceSet& r) {
  if (auto u = r.as<IntervalUnion>()) {
    const auto& c = u->comps.front();
    return c.lo.sign() == 0 && !c.is_point();
  }
  return false;
}

inline SetTrait traits(const DistanceSet& r) {
  SetTrait t;
  t.zero_limit = has_zero_limit(r);
  if (r.as<FiniteSet>() || r.as<OmegaSegment>()) {
    t.countable = t.closed = true;
    t.countable_note = "finite set";
    t.closed_note = "finite set";
    t.zero_limit_note = "finite set has least positive element";
  } else if (auto s = r.as<SumClosure>()) {
    t.countable = t.closed = true;
    t.countable_note = "finitely generated additive closure";
    t.closed_note = "discrete: least generator " + s->generators.front().str() + " > 0";
    t.zero_limit_note = "no positive element below " + s->generators.front().str();
  } else {
    const auto& comps = r.as<IntervalUnion>()->comps;
    t.countable = true;
    t.closed = true;
    t.countable_note = "no real interval of positive length";
    t.closed_note = "all finite endpoints closed";
    for (const auto& c : comps) {
      if (c.is_point()) continue;
      if (!c.rational) {
        if (t.countable) t.countable_note = "contains real interval " + c.str();
        t.countable = false;
      } else if (t.closed) {
        t.closed = false;
        t.closed_note = "rationals of " + c.str() + " are not closed";
      }
      if (t.closed && (!c.lo_closed || (!c.hi.is_inf() && !c.hi_closed))) {
        t.closed = false;
        t.closed_note = "open endpoint in " + c.str();
      }
    }
    t.zero_limit_note = t.zero_limit ? "first piece " + comps.front().str() + " accumulates at 0"
                                     : "gap (0," + (comps.size() > 1 ? comps[1].lo.str() : std::string("inf")) +
                                           ") above 0";
  }
  return t;
}

inline DistanceSet closure(const DistanceSet& r) {
  auto u = r.as<IntervalUnion>();
  if (!u) return r;
  std::vector<Component> comps = u->comps;
  for (auto& c : comps) {
    c.rational = false;
    c.lo_closed = true;
    if (!c.hi.is_inf()) c.hi_closed = true;
  }
  return DistanceSet::intervals(std::move(comps));
}

/// Elements x of R with (x, x+eps) disjoint from R for some eps > 0.
/// Infinite discrete sets are enumerated up to `bound`.
inline PointList r_paren(const DistanceSet& r, const Rat& bound = Rat(64)) {
  if (auto f = r.finite_points()) return {*f, std::nullopt};
  if (auto s = r.as<SumClosure>()) return DistanceSet::sum_elements(*s, bound);
  PointList out;
  for (const auto& c : r.as<IntervalUnion>()->comps)
    if (!c.hi.is_inf() && c.hi_closed) out.points.push_back(c.hi.value());
  return out;
}

inline PointList isolated_points(const DistanceSet& r, const Rat& bound = Rat(64)) {
  if (auto f = r.finite_points()) return {*f, std::nullopt};
  if (auto s = r.as<SumClosure>()) return DistanceSet::sum_elements(*s, bound);
  PointList out;
  for (const auto& c : r.as<IntervalUnion>()->comps)
    if (c.is_point()) out.points.push_back(c.lo);
  return out;
}

inline bool is_isolated(const DistanceSet& r, const Rat& x) {
  if (!r.contains(x)) return false;
  if (auto u = r.as<IntervalUnion>()) {
    for (const auto& c : u->comps)
      if (c.contains(x)) return c.is_point();
    return false;
  }
  return true;
}

inline bool has_right_gap(const DistanceSet& r, const Rat& x) {
  if (!r.contains(x)) return false;
  if (auto u = r.as<IntervalUnion>()) {
    for (const auto& c : u->comps)
      if (c.contains(x)) return !c.hi.is_inf() && c.hi.value() == x;
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Canonical picks.

struct RangePick {
  std::optional<Rat> value;
  std::string certificate;  // why the window misses R, when value is empty
};

namespace detail {

inline std::optional<Rat> pick_sorted(const std::vector<Rat>& pts, const Window& w) {
  auto it = std::lower_bound(pts.begin(), pts.end(), w.lo);
  for (; it != pts.end(); ++it) {
    if (w.contains(*it)) return *it;
    if (!w.hi.is_inf() && *it > w.hi.value()) break;
  }
  return std::nullopt;
}

inline std::string window_str(const Window& w) {
  return std::string(w.lo_closed ? "[" : "(") + w.lo.str() + "," + w.hi.str() + (w.hi_closed ? "]" : ")");
}

}  // namespace detail

/// Canonical element of R in the window: least element for discrete
/// representations; for interval unions the rational of least denominator
/// (ties: least value).
inline RangePick pick(const DistanceSet& r, const Window& w) {
  RangePick out;
  if (w.empty()) {
    out.certificate = "window " + detail::window_str(w) + " is empty";
    return out;
  }
  if (auto f = r.as<FiniteSet>()) {
    out.value = detail::pick_sorted(f->points, w);
  } else if (r.as<OmegaSegment>()) {
    mpz_class n = w.lo_closed ? w.lo.ceil() : w.lo.floor() + 1;
    if (n < 0) n = 0;
    Rat c(n, mpz_class(1));
    if (w.contains(c) && r.contains(c)) out.value = c;
  } else if (auto s = r.as<SumClosure>()) {
    Rat bound = w.lo + s->generators.front();
    if (!w.hi.is_inf() && w.hi.value() < bound) bound = w.hi.value();
    out.value = detail::pick_sorted(DistanceSet::sum_elements(*s, bound).points, w);
  } else {
    for (const auto& c : r.as<IntervalUnion>()->comps) {
      Rat lo = c.lo;
      bool lo_closed = c.lo_closed;
      if (w.lo > lo || (w.lo == lo && !w.lo_closed)) { lo = w.lo; lo_closed = w.lo_closed; }
      XRat hi = c.hi;
      bool hi_closed = c.hi_closed;
      if (w.hi < hi || (w.hi == hi && !w.hi_closed)) { hi = w.hi; hi_closed = w.hi_closed; }
      auto cand = simplest_in(lo, lo_closed, hi, hi_closed);
      if (!cand) continue;
      if (!out.value || cand->den() < out.value->den() ||
          (cand->den() == out.value->den() && *cand < *out.value))
        out.value = cand;
    }
  }
  if (!out.value) out.certificate = "R misses " + detail::window_str(w) + ": " + r.str();
  return out;
}

/// Canonical element of R in [lo, hi].
inline RangePick range_pick(const DistanceSet& r, const Rat& lo, const XRat& hi) {
  if (!hi.is_inf() && lo > hi.value()) throw std::invalid_argument("range_pick: lo > hi");
  return pick(r, Window::closed(lo, hi));
}

/// Elements of R in [0,cap] whose denominator is at most max_den.
inline std::vector<Rat> grid(const DistanceSet& r, unsigned long max_den, const Rat& cap) {
  std::vector<Rat> out;
  auto keep = [&](const Rat& q) { return q <= cap && q.den() <= max_den; };
  if (auto f = r.finite_points()) {
    for (const auto& q : *f)
      if (keep(q)) out.push_back(q);
    return out;
  }
  if (auto s = r.as<SumClosure>()) {
    for (const auto& q : DistanceSet::sum_elements(*s, cap).points)
      if (keep(q)) out.push_back(q);
    return out;
  }
  std::set<Rat> seen;
  for (unsigned long q = 1; q <= max_den; ++q) {
    mpz_class top = (cap * Rat(static_cast<long>(q))).floor();
    for (mpz_class p = 0; p <= top; ++p) {
      Rat v(p, mpz_class(q));
      if (v.den() != q) continue;
      if (r.contains(v)) seen.insert(v);
    }
  }
  return {seen.begin(), seen.end()};
}

/// Deterministic enumeration of a dense subset of R, truncated at `budget`
/// elements: isolated points, then closed finite endpoints, then rationals of
/// R by level L = 1,2,... (denominator <= L and value <= L), each level in
/// (denominator, numerator) order.  Discrete sets list their elements.
inline std::vector<Rat> dense_subset(const DistanceSet& r, std::size_t budget) {
  std::vector<Rat> out;
  if (budget == 0) return out;
  if (auto f = r.finite_points()) {
    for (const auto& q : *f) {
      if (out.size() == budget) break;
      out.push_back(q);
    }
    return out;
  }
  if (auto s = r.as<SumClosure>()) {
    Rat bound = s->generators.back();
    for (;;) {
      auto pl = DistanceSet::sum_elements(*s, bound);
      if (pl.points.size() >= budget || !pl.bound) {
        for (const auto& q : pl.points) {
          if (out.size() == budget) break;
          out.push_back(q);
        }
        return out;
      }
      bound = bound * Rat(2);
    }
  }
  const auto& comps = r.as<IntervalUnion>()->comps;
  std::set<Rat> seen;
  auto emit = [&](const Rat& q) {
    if (out.size() < budget && seen.insert(q).second) out.push_back(q);
  };
  for (const auto& q : isolated_points(r).points) emit(q);
  for (const auto& c : comps) {
    if (c.is_point()) continue;
    if (c.lo_closed) emit(c.lo);
    if (!c.hi.is_inf() && c.hi_closed) emit(c.hi.value());
  }
  XRat sup = comps.back().hi;
  bool any_interval = std::any_of(comps.begin(), comps.end(), [](const Component& c) { return !c.is_point(); });
  if (!any_interval) return out;
  for (unsigned long level = 1; out.size() < budget; ++level) {
    Rat lvl(static_cast<long>(level));
    Rat top = sup.is_inf() || lvl < sup.value() ? lvl : sup.value();
    for (unsigned long q = 1; q <= level && out.size() < budget; ++q) {
      mpz_class pmax = (top * Rat(static_cast<long>(q))).floor();
      mpz_class pmin = q == level ? mpz_class(0) : mpz_class((Rat(static_cast<long>(level - 1)) * Rat(static_cast<long>(q))).floor() + 1);
      for (mpz_class p = pmin; p <= pmax && out.size() < budget; ++p) {
        Rat v(p, mpz_class(q));
        if (v.den() != q) continue;
        if (r.contains(v)) emit(v);
      }
    }
  }
  return out;
}

}  // namespace urysohn
