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

// Brute-force reference implementations used as test oracles.  They share
// only Rat, DistanceSet::contains and FiniteMetricSpace storage with the
// library; every decision is recomputed from the definitions.

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "urysohn/urysohn.hpp"

namespace oracle {

using urysohn::DistanceSet;
using urysohn::FiniteMetricSpace;
using urysohn::Rat;

inline bool tri(const Rat& a, const Rat& b, const Rat& c) { return a <= b + c && b <= a + c && c <= a + b; }

/// Every triangle of the table, checked directly.
inline bool metric(const FiniteMetricSpace& m) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if ((i == j) != (m.d(i, j).sign() == 0) || m.d(i, j) != m.d(j, i) || m.d(i, j).sign() < 0) return false;
      for (std::size_t k = 0; k < n; ++k)
        if (m.d(i, k) > m.d(i, j) + m.d(j, k)) return false;
    }
  return true;
}

inline bool dist_in(const FiniteMetricSpace& m, const DistanceSet& r) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (!r.contains(m.d(i, j))) return false;
  return true;
}

/// 4-values over a finite set, all quadruples, all x and y, no pruning.
struct FourValuesFailure {
  Rat x, a, b, c, d;
};

inline std::optional<FourValuesFailure> four_values_finite(const std::vector<Rat>& r) {
  for (const auto& a : r)
    for (const auto& b : r)
      for (const auto& c : r)
        for (const auto& d : r)
          for (const auto& x : r) {
            if (!tri(x, a, b) || !tri(x, c, d)) continue;
            bool found = false;
            for (const auto& y : r)
              if (tri(y, a, d) && tri(y, c, b)) { found = true; break; }
            if (!found) return FourValuesFailure{x, a, b, c, d};
          }
  return std::nullopt;
}

/// Does R meet the closed interval [lo, hi]?  Interval unions are checked
/// component by component; other sets by listing their points.
inline bool meets(const DistanceSet& r, const Rat& lo, const Rat& hi) {
  if (lo > hi) return false;
  if (auto u = r.as<urysohn::IntervalUnion>()) {
    for (const auto& c : u->comps) {
      // component [c.lo, c.hi] with open/closed ends against [lo, hi]
      bool below = !c.hi.is_inf() && (c.hi.value() < lo || (c.hi.value() == lo && !c.hi_closed));
      bool above = c.lo > hi || (c.lo == hi && !c.lo_closed);
      if (below || above) continue;
      if (!c.rational) return true;
      // rational pieces are dense: any overlap of positive length or a
      // rational shared endpoint meets
      return true;
    }
    return false;
  }
  if (auto f = r.finite_points()) {
    for (const auto& p : *f)
      if (p >= lo && p <= hi) return true;
    return false;
  }
  for (const auto& p : DistanceSet::sum_elements(*r.as<urysohn::SumClosure>(), hi).points)
    if (p >= lo && p <= hi) return true;
  return false;
}

/// A concrete failure: x in R, both x-triangles metric, and R misses the
/// whole interval of y making both y-triangles metric.
inline bool is_failure(const DistanceSet& r, const Rat& x, const Rat& a, const Rat& b, const Rat& c, const Rat& d) {
  if (!r.contains(x) || !r.contains(a) || !r.contains(b) || !r.contains(c) || !r.contains(d)) return false;
  if (!tri(x, a, b) || !tri(x, c, d)) return false;
  Rat lo = std::max(urysohn::abs(a - d), urysohn::abs(c - b));
  Rat hi = std::min(a + d, c + b);
  return !meets(r, lo, hi);
}

/// Failure search over the grid of R (denominator <= q, value <= cap).
inline std::optional<FourValuesFailure> four_values_grid(const DistanceSet& r, long q, const Rat& cap) {
  std::vector<Rat> g;
  for (long den = 1; den <= q; ++den)
    for (long num = 0; Rat(num, den) <= cap; ++num) {
      Rat v(num, den);
      if (v.den() == den && r.contains(v)) g.push_back(v);
    }
  std::sort(g.begin(), g.end());
  for (const auto& a : g)
    for (const auto& b : g)
      for (const auto& c : g)
        for (const auto& d : g)
          for (const auto& x : g)
            if (is_failure(r, x, a, b, c, d)) return FourValuesFailure{x, a, b, c, d};
  return std::nullopt;
}

/// Every way to fill the single missing pair (p,q) of an otherwise known
/// table with a value from `values` so that the space is metric.
inline std::vector<Rat> completions(std::vector<std::vector<Rat>> t, std::size_t p, std::size_t q,
                                    const std::vector<Rat>& values) {
  std::vector<Rat> out;
  for (const auto& v : values) {
    if (v.sign() <= 0) continue;
    t[p][q] = t[q][p] = v;
    bool ok = true;
    const std::size_t n = t.size();
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j)
        for (std::size_t k = 0; k < n && ok; ++k)
          if (t[i][k] > t[i][j] + t[j][k]) ok = false;
    if (ok) out.push_back(v);
  }
  return out;
}

/// Does some space with distances in `r` exist within eps of `a`?  All
/// elements of the finite set r are tried on every edge.
inline bool age_member_finite(const FiniteMetricSpace& a, const std::vector<Rat>& r, const Rat& eps) {
  const std::size_t n = a.size();
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  std::vector<std::vector<Rat>> t(n, std::vector<Rat>(n, Rat(0)));
  auto rec = [&](auto&& self, std::size_t e) -> bool {
    if (e == edges.size()) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k)
            if (t[i][k] > t[i][j] + t[j][k]) return false;
      return true;
    }
    auto [i, j] = edges[e];
    for (const auto& v : r) {
      if (v.sign() <= 0 || !(urysohn::abs(v - a.d(i, j)) < eps)) continue;
      t[i][j] = t[j][i] = v;
      if (self(self, e + 1)) return true;
    }
    return false;
  };
  return rec(rec, 0);
}

/// Every k-point subspace of m embeds into n (checked by trying all
/// injections).
inline bool age_included(const FiniteMetricSpace& m, const FiniteMetricSpace& n, std::size_t k) {
  if (k > m.size()) return true;
  std::vector<std::size_t> sub(k);
  std::vector<std::size_t> img(k);
  auto embeds = [&]() {
    auto rec = [&](auto&& self, std::size_t i) -> bool {
      if (i == k) return true;
      for (std::size_t y = 0; y < n.size(); ++y) {
        bool ok = true;
        for (std::size_t j = 0; j < i && ok; ++j)
          if (img[j] == y || n.d(img[j], y) != m.d(sub[j], sub[i])) ok = false;
        if (!ok) continue;
        img[i] = y;
        if (self(self, i + 1)) return true;
      }
      return false;
    };
    return rec(rec, 0);
  };
  auto choose = [&](auto&& self, std::size_t i, std::size_t from) -> bool {
    if (i == k) return embeds();
    for (std::size_t x = from; x < m.size(); ++x) {
      sub[i] = x;
      if (!self(self, i + 1, x + 1)) return false;
    }
    return true;
  };
  return choose(choose, 0, 0);
}

/// Random metric space on n points with distances from `values`, by
/// rejection (nullopt if no sample succeeds).
inline std::optional<FiniteMetricSpace> random_space(std::mt19937_64& rng, std::size_t n,
                                                     const std::vector<Rat>& values, int tries = 200) {
  std::vector<Rat> pos;
  for (const auto& v : values)
    if (v.sign() > 0) pos.push_back(v);
  if (pos.empty()) return n <= 1 ? std::optional(FiniteMetricSpace::from_upper(n, {})) : std::nullopt;
  std::uniform_int_distribution<std::size_t> pick(0, pos.size() - 1);
  for (int t = 0; t < tries; ++t) {
    std::vector<Rat> up;
    for (std::size_t i = 0; i < n * (n - (n > 0)) / 2; ++i) up.push_back(pos[pick(rng)]);
    auto m = FiniteMetricSpace::from_upper_unchecked(n, up);
    if (metric(m)) return m;
  }
  return std::nullopt;
}

}  // namespace oracle
