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

// The 4-values condition.  R satisfies it when for all a,b,c,d,x in R with
// x ~> (a,b,c,d) some y in R has y ~> (a,d,c,b), i.e. R meets
// [max(|a-d|,|b-c|), min(a+d,b+c)].  A failure needs a > b+c, a > b+d and
// a > c+d; any other quadruple is answered by one of its own entries.  Under
// those inequalities the swap interval is exactly [a-d, b+c].

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "urysohn/distance_set.hpp"
#include "urysohn/linear.hpp"
#include "urysohn/metric_space.hpp"

namespace urysohn {

struct Quadruple {
  Rat a, b, c, d;
  friend bool operator==(const Quadruple&, const Quadruple&) = default;
};

/// x ~> (a,b,c,d): (x,a,b) and (x,c,d) metric and a >= max(b,c,d).
inline bool leadsto(const Rat& x, const Quadruple& q) {
  if (x.sign() < 0 || q.a.sign() < 0 || q.b.sign() < 0 || q.c.sign() < 0 || q.d.sign() < 0) return false;
  return is_metric_triple(x, q.a, q.b) && is_metric_triple(x, q.c, q.d) && q.a >= q.b && q.a >= q.c && q.a >= q.d;
}

/// Interval of y with y ~> (a,d,c,b) ignoring the order condition.
inline std::pair<Rat, Rat> swap_interval(const Quadruple& q) {
  Rat u = std::max(abs(q.a - q.d), abs(q.b - q.c));
  Rat l = std::min(q.a + q.d, q.b + q.c);
  return {u, l};
}

/// Window of x with x ~> (a,b,c,d) (order condition checked separately).
inline std::pair<Rat, Rat> leadsto_window(const Quadruple& q) {
  return {std::max(abs(q.a - q.b), abs(q.c - q.d)), std::min(q.a + q.b, q.c + q.d)};
}

inline bool pruned_shape(const Quadruple& q) {
  return q.a > q.b + q.c && q.a > q.b + q.d && q.a > q.c + q.d;
}

enum class Truth { Holds, Fails, Unknown };

inline std::string truth_str(Truth t) {
  switch (t) {
    case Truth::Holds: return "holds";
    case Truth::Fails: return "fails";
    default: return "unknown";
  }
}

struct FourValuesWitness {
  Rat x;
  Quadruple q;
  Rat u, l;  // swap interval
  std::string certificate;

  [[nodiscard]] std::string str() const {
    return x.str() + ";" + q.a.str() + ";" + q.b.str() + ";" + q.c.str() + ";" + q.d.str();
  }
};

struct FourValuesVerdict {
  Truth truth = Truth::Unknown;
  std::string method;
  std::optional<FourValuesWitness> witness;
  std::string note;

  [[nodiscard]] bool holds() const { return truth == Truth::Holds; }
  [[nodiscard]] bool fails() const { return truth == Truth::Fails; }

  [[nodiscard]] std::vector<std::string> report_lines() const {
    std::vector<std::string> out{"fourvalues=" + truth_str(truth), "method=" + method};
    if (witness) {
      out.push_back("witness=" + witness->str());
      out.push_back("gap=[" + witness->u.str() + "," + witness->l.str() + "]");
    }
    if (!note.empty()) out.push_back("note=" + note);
    return out;
  }
};

namespace detail {

inline mpz_class max_den(std::initializer_list<const Rat*> v) {
  mpz_class m = 1;
  for (auto* r : v) m = std::max(m, r->den());
  return m;
}

/// Ordering used to report one witness among many: smallest largest
/// denominator, then a, b, c, d, x.
inline bool witness_less(const FourValuesWitness& s, const FourValuesWitness& t) {
  auto ks = max_den({&s.x, &s.q.a, &s.q.b, &s.q.c, &s.q.d});
  auto kt = max_den({&t.x, &t.q.a, &t.q.b, &t.q.c, &t.q.d});
  if (ks != kt) return ks < kt;
  return std::tie(s.q.a, s.q.b, s.q.c, s.q.d, s.x) < std::tie(t.q.a, t.q.b, t.q.c, t.q.d, t.x);
}

inline bool sorted_meets(const std::vector<Rat>& r, const Rat& lo, const Rat& hi) {
  auto it = std::lower_bound(r.begin(), r.end(), lo);
  return it != r.end() && *it <= hi;
}

}  // namespace detail

/// Re-checks a failure witness against R from scratch.
inline bool validate_witness(const DistanceSet& r, const FourValuesWitness& w) {
  for (const Rat* v : {&w.x, &w.q.a, &w.q.b, &w.q.c, &w.q.d})
    if (!r.contains(*v)) return false;
  if (!leadsto(w.x, w.q)) return false;
  auto [u, l] = swap_interval(w.q);
  if (u != w.u || l != w.l || u > l) return false;
  return !range_pick(r, u, XRat(l)).value;
}

/// Exact check of a finite set given as its sorted elements.  With `prune`
/// only quadruples with a larger than every pairwise sum are examined.
inline FourValuesVerdict check_finite(const std::vector<Rat>& pts, bool prune = true) {
  std::vector<Rat> r = pts;
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  FourValuesVerdict v;
  v.method = prune ? "exact-finite" : "exact-finite-unpruned";
  v.truth = Truth::Holds;
  const std::size_t n = r.size();
  for (std::size_t ia = 0; ia < n; ++ia) {
    const Rat& a = r[ia];
    for (std::size_t ib = 0; ib <= ia; ++ib)
      for (std::size_t ic = 0; ic <= ia; ++ic) {
        if (prune && !(a > r[ib] + r[ic])) break;
        for (std::size_t id = 0; id <= ia; ++id) {
          Quadruple q{a, r[ib], r[ic], r[id]};
          if (prune && !pruned_shape(q)) break;
          auto [u, l] = swap_interval(q);
          if (u <= l && detail::sorted_meets(r, u, l)) continue;
          auto [xl, xh] = leadsto_window(q);
          if (xl > xh) continue;
          // Least-denominator x in the window, ties by value.
          std::optional<Rat> x;
          for (auto it = std::lower_bound(r.begin(), r.end(), xl); it != r.end() && *it <= xh; ++it)
            if (!x || it->den() < x->den()) x = *it;
          if (!x) continue;
          FourValuesWitness w{*x, q, u, l, "R misses [" + u.str() + "," + l.str() + "]"};
          if (!v.witness || detail::witness_less(w, *v.witness)) v.witness = w;
          v.truth = Truth::Fails;
        }
      }
  }
  return v;
}

/// Seeded falsifier: samples quadruples from grid(R, max_den, cap), keeps
/// the ones with a larger than every pairwise sum, and checks x and the
/// swap interval exactly against R.  Returns the least witness found.
inline FourValuesVerdict falsify(const DistanceSet& r, std::uint64_t samples, unsigned long max_den, const Rat& cap,
                                 std::uint64_t seed = 1) {
  FourValuesVerdict v;
  v.method = "falsifier(samples=" + std::to_string(samples) + ",seed=" + std::to_string(seed) +
             ",denom=" + std::to_string(max_den) + ",cap=" + cap.str() + ")";
  auto g = grid(r, max_den, cap);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pickidx(0, g.size() - 1);
  std::uint64_t shaped = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    Rat vals[4] = {g[pickidx(rng)], g[pickidx(rng)], g[pickidx(rng)], g[pickidx(rng)]};
    std::size_t m = 0;
    for (std::size_t i = 1; i < 4; ++i)
      if (vals[i] > vals[m]) m = i;
    std::swap(vals[0], vals[m]);
    Quadruple q{vals[0], vals[1], vals[2], vals[3]};
    if (!pruned_shape(q)) continue;
    ++shaped;
    auto [u, l] = swap_interval(q);
    if (u <= l && range_pick(r, u, XRat(l)).value) continue;
    auto [xl, xh] = leadsto_window(q);
    if (xl > xh) continue;
    auto x = range_pick(r, xl, XRat(xh)).value;
    if (!x) continue;
    FourValuesWitness w{*x, q, u, l, "R misses [" + u.str() + "," + l.str() + "]"};
    if (!v.witness || detail::witness_less(w, *v.witness)) v.witness = w;
  }
  if (v.witness) {
    v.truth = Truth::Fails;
  } else {
    v.truth = Truth::Unknown;
    v.note = "none-found: grid=" + std::to_string(g.size()) + " shaped=" + std::to_string(shaped);
  }
  return v;
}

class CellExplosion : public Error {
 public:
  CellExplosion(std::uint64_t cells, std::uint64_t cap)
      : Error("CellExplosion", std::to_string(cells) + " cells exceed cap " + std::to_string(cap)) {}
};

/// Cell decomposition for an interval union.  For each gap between
/// consecutive components and each assignment of a,b,c,d,x to components,
/// the failure condition is a conjunction of linear inequalities (the
/// pruned shape removes every absolute value and min/max), decided by
/// Fourier-Motzkin elimination.  Rays need no special treatment.
inline FourValuesVerdict check_intervals(const DistanceSet& r, std::uint64_t cell_cap = 5'000'000) {
  const auto* u = r.as<IntervalUnion>();
  if (!u) throw std::invalid_argument("check_intervals needs an interval union");
  const auto& C = u->comps;
  const std::size_t k = C.size();
  FourValuesVerdict v;
  v.method = "exact-interval";
  v.truth = Truth::Holds;
  std::uint64_t cells = k < 2 ? 0 : static_cast<std::uint64_t>(k - 1);
  for (int i = 0; i < 5 && cells; ++i) cells *= k;
  if (cells > cell_cap) throw CellExplosion(cells, cell_cap);

  enum { A, B, Cv, D, X };
  auto lo_of = [&](std::size_t i) { return C[i].lo; };
  auto hi_of = [&](std::size_t i) { return C[i].hi; };
  std::uint64_t examined = 0, feasible = 0;
  for (std::size_t gap = 0; gap + 1 < k; ++gap) {
    const Rat& gap_lo = C[gap].hi.value();  // finite: not the last piece
    const Rat& gap_hi = C[gap + 1].lo;
    for (std::size_t ia = gap + 1; ia < k; ++ia)  // a - d > gap_lo forces a above the gap
      for (std::size_t ib = 0; ib <= ia; ++ib)
        for (std::size_t ic = 0; ic <= ia; ++ic) {
          if (lo_of(ib) + lo_of(ic) > gap_hi) continue;  // b + c below the gap top
          for (std::size_t id = 0; id <= ia; ++id) {
            // a - d > gap_lo
            if (!hi_of(ia).is_inf() && hi_of(ia).value() - lo_of(id) < gap_lo) continue;
            for (std::size_t ix = 0; ix < k; ++ix) {
              ++examined;
              // Box test on x <= c + d and x >= a - b.
              if (!hi_of(ic).is_inf() && !hi_of(id).is_inf() && lo_of(ix) > hi_of(ic).value() + hi_of(id).value())
                continue;
              if (!hi_of(ix).is_inf() && !hi_of(ib).is_inf() && hi_of(ix).value() + hi_of(ib).value() < lo_of(ia))
                continue;
              LinearSystem sys(5);
              std::size_t idx[5] = {ia, ib, ic, id, ix};
              for (std::size_t var = 0; var < 5; ++var) {
                const auto& c = C[idx[var]];
                sys.add({{var, Rat(1)}}, -c.lo, !c.lo_closed);
                if (!c.hi.is_inf()) sys.add({{var, Rat(-1)}}, c.hi.value(), !c.hi_closed);
              }
              // Pruned shape.
              sys.add({{A, 1}, {B, -1}, {Cv, -1}}, 0, true);
              sys.add({{A, 1}, {B, -1}, {D, -1}}, 0, true);
              sys.add({{A, 1}, {Cv, -1}, {D, -1}}, 0, true);
              // x ~> (a,b,c,d).
              sys.add({{X, 1}, {A, -1}, {B, 1}}, 0, false);
              sys.add({{A, 1}, {B, 1}, {X, -1}}, 0, false);
              sys.add({{X, 1}, {Cv, -1}, {D, 1}}, 0, false);
              sys.add({{X, 1}, {D, -1}, {Cv, 1}}, 0, false);
              sys.add({{Cv, 1}, {D, 1}, {X, -1}}, 0, false);
              // [a-d, b+c] inside the gap.
              sys.add({{A, 1}, {D, -1}}, -gap_lo, C[gap].hi_closed);
              sys.add({{B, -1}, {Cv, -1}}, gap_hi, C[gap + 1].lo_closed);
              auto sol = sys.solve();
              if (!sol) continue;
              ++feasible;
              Quadruple q{(*sol)[A], (*sol)[B], (*sol)[Cv], (*sol)[D]};
              auto [su, sl] = swap_interval(q);
              FourValuesWitness w{(*sol)[X], q, su, sl,
                                  "[" + su.str() + "," + sl.str() + "] lies in the gap between " + C[gap].str() +
                                      " and " + C[gap + 1].str()};
              if (!v.witness || detail::witness_less(w, *v.witness)) v.witness = w;
            }
          }
        }
  }
  if (v.witness) v.truth = Truth::Fails;
  v.note = "cells=" + std::to_string(examined) + " feasible=" + std::to_string(feasible);
  return v;
}

/// Exact verdict where a decision procedure applies, otherwise the
/// falsifier (which can only report fails or unknown).
inline FourValuesVerdict decide(const DistanceSet& r, std::uint64_t samples = 100'000, unsigned long max_den = 8,
                                const Rat& cap = Rat(16), std::uint64_t seed = 1) {
  if (auto s = r.as<SumClosure>(); s && s->cap.is_inf()) {
    FourValuesVerdict v;
    v.truth = Truth::Holds;
    v.method = "exact-sumclosed";
    v.note = "b+c lies in R and in the swap interval";
    return v;
  }
  if (auto f = r.finite_points()) return check_finite(*f);
  try {
    return check_intervals(r);
  } catch (const CellExplosion& e) {
    auto v = falsify(r, samples, max_den, cap, seed);
    v.note += (v.note.empty() ? "" : " ") + std::string("fallback: ") + e.what();
    return v;
  }
}

/// Countable subset of R: a dense enumeration prefix closed under swap
/// witnesses for `rounds` rounds, never exceeding `max_size` elements.
inline std::vector<Rat> swap_closed_subset(const DistanceSet& r, std::size_t base, std::size_t rounds,
                                           std::size_t max_size) {
  auto s0 = dense_subset(r, base);
  std::set<Rat> s(s0.begin(), s0.end());
  for (std::size_t round = 0; round < rounds && s.size() < max_size; ++round) {
    std::vector<Rat> pts(s.begin(), s.end());
    std::vector<Rat> added;
    for (std::size_t ia = 0; ia < pts.size(); ++ia)
      for (std::size_t ib = 0; ib < ia; ++ib)
        for (std::size_t ic = 0; ic < ia; ++ic) {
          if (!(pts[ia] > pts[ib] + pts[ic])) break;
          for (std::size_t id = 0; id < ia; ++id) {
            Quadruple q{pts[ia], pts[ib], pts[ic], pts[id]};
            if (!pruned_shape(q)) break;
            auto [u, l] = swap_interval(q);
            if (u > l || detail::sorted_meets(pts, u, l)) continue;
            auto [xl, xh] = leadsto_window(q);
            if (xl > xh || !detail::sorted_meets(pts, xl, xh)) continue;
            if (auto y = range_pick(r, u, XRat(l)).value) added.push_back(*y);
          }
        }
    if (added.empty()) break;
    for (const auto& y : added) {
      if (s.size() >= max_size) break;
      s.insert(y);
    }
  }
  return {s.begin(), s.end()};
}

}  // namespace urysohn
