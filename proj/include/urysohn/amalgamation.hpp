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

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "urysohn/distance_set.hpp"
#include "urysohn/four_values.hpp"
#include "urysohn/metric_space.hpp"

namespace urysohn {

/// Two spaces and a partial map of A's points onto B's points that must be
/// an isometry.
struct AmalgamInstance {
  FiniteMetricSpace A, B;
  PartialIsometry shared;  // A index -> B index
};

/// One cross distance chosen during amalgamation.
struct AmalgamChoice {
  std::size_t a_point;  // index in A
  std::size_t c_point;  // index in C of the B-side point
  Rat u;
  XRat l;  // inf when nothing bounds the pair
  Rat value;
};

/// C contains B as points 0..|B|-1 followed by A's unshared points in
/// ascending order.
struct AmalgamResult {
  FiniteMetricSpace C;
  std::vector<std::size_t> embed_a;  // A index -> C index
  std::vector<std::size_t> embed_b;  // B index -> C index
  std::vector<AmalgamChoice> choices;
  bool identifiable = false;  // some pair could only have been put at 0
};

class EmptyChoiceInterval : public Error {
 public:
  EmptyChoiceInterval(std::size_t p, std::size_t q, Rat u, Rat l)
      : Error("EmptyChoiceInterval", "no admissible distance for pair (" + std::to_string(p) + "," +
                                         std::to_string(q) + ") in [" + u.str() + "," + l.str() + "]"),
        p_(p), q_(q), u_(std::move(u)), l_(std::move(l)) {}
  [[nodiscard]] std::size_t p() const { return p_; }
  [[nodiscard]] std::size_t q() const { return q_; }
  [[nodiscard]] const Rat& u() const { return u_; }
  [[nodiscard]] const Rat& l() const { return l_; }

 private:
  std::size_t p_, q_;
  Rat u_, l_;
};

/// Feasible distances between p and q over a shared pair v,w with
/// a=d(p,v), b=d(p,w), c=d(q,w), d=d(q,v).
inline std::pair<Rat, Rat> amalg_interval(const Rat& a, const Rat& b, const Rat& c, const Rat& d) {
  return swap_interval({a, b, c, d});
}

/// Picks a value of R from a window; the default is the canonical pick.
using Chooser = std::function<std::optional<Rat>(const DistanceSet&, const Window&)>;

inline std::optional<Rat> canonical_choice(const DistanceSet& r, const Window& w) { return pick(r, w).value; }

namespace detail {

inline void check_instance(const AmalgamInstance& in) {
  for (const auto& [x, y] : in.shared)
    if (x >= in.A.size() || y >= in.B.size()) throw std::out_of_range("shared map index out of range");
  if (!is_partial_isometry(in.A, in.B, in.shared))
    throw Error("NotAnInstance", "shared points have different distances in A and B");
}

}  // namespace detail

/// Iterated one-point amalgamation: A's unshared points are added to B in
/// ascending order.  For each new point p and each B-side point q without a
/// prescribed distance, d(p,q) is taken from R within [u^, l^] computed
/// against every point whose distance to both is already known.  Zero is
/// never chosen.
inline AmalgamResult amalgamate(const AmalgamInstance& in, const DistanceSet& r,
                                const Chooser& choose = canonical_choice) {
  detail::check_instance(in);
  AmalgamResult res;
  res.C = in.B;
  res.embed_b.resize(in.B.size());
  for (std::size_t i = 0; i < in.B.size(); ++i) res.embed_b[i] = i;
  std::vector<std::optional<std::size_t>> ea(in.A.size());
  for (const auto& [x, y] : in.shared) ea[x] = y;

  for (std::size_t p = 0; p < in.A.size(); ++p) {
    if (ea[p]) continue;
    const std::size_t n = res.C.size();
    std::vector<std::optional<Rat>> dist(n);
    std::vector<std::size_t> known;
    for (std::size_t v = 0; v < in.A.size(); ++v)
      if (ea[v]) {
        dist[*ea[v]] = in.A.d(p, v);
        known.push_back(*ea[v]);
      }
    for (std::size_t q = 0; q < n; ++q) {
      if (dist[q]) continue;
      Rat u(0);
      XRat l = XRat::infinity();
      for (std::size_t v : known) {
        Rat lo = abs(*dist[v] - res.C.d(q, v));
        Rat hi = *dist[v] + res.C.d(q, v);
        if (lo > u) u = lo;
        if (XRat(hi) < l) l = hi;
      }
      if (!l.is_inf() && u > l.value()) throw EmptyChoiceInterval(p, q, u, l.value());
      Window w{u, u.sign() > 0, l, !l.is_inf()};
      std::optional<Rat> y;
      if (!w.empty()) y = choose(r, w);
      if (!y) {
        if (u.sign() == 0 && !l.is_inf() && l.value().sign() == 0) res.identifiable = true;
        throw EmptyChoiceInterval(p, q, u, l.is_inf() ? u : l.value());
      }
      if (!r.contains(*y) || !w.contains(*y) || y->sign() <= 0)
        throw std::logic_error("chooser returned a value outside R or the window");
      dist[q] = *y;
      known.push_back(q);
      res.choices.push_back({p, q, u, l, *y});
    }
    std::vector<Rat> row(n);
    for (std::size_t q = 0; q < n; ++q) row[q] = *dist[q];
    res.C = res.C.with_point_unchecked(row);
    ea[p] = n;
  }
  res.embed_a.resize(in.A.size());
  for (std::size_t i = 0; i < in.A.size(); ++i) res.embed_a[i] = *ea[i];
  return res;
}

/// One-point case: A has exactly one point outside the shared part (or
/// none, in which case B is returned unchanged).
inline AmalgamResult amalgamate_point(const AmalgamInstance& in, const DistanceSet& r,
                                      const Chooser& choose = canonical_choice) {
  if (in.A.size() > in.shared.size() + 1)
    throw std::invalid_argument("amalgamate_point: more than one unshared point in A");
  return amalgamate(in, r, choose);
}

/// Every completion of the instance with cross distances in the finite set
/// `rfin` (brute force; at most `cap` new pairs).
inline std::vector<AmalgamResult> enumerate_amalgams(const AmalgamInstance& in, const std::vector<Rat>& rfin,
                                                     std::size_t cap = 6) {
  detail::check_instance(in);
  std::vector<std::size_t> new_a;
  for (std::size_t p = 0; p < in.A.size(); ++p)
    if (!in.shared.count(p)) new_a.push_back(p);
  std::vector<bool> b_shared(in.B.size(), false);
  for (const auto& [x, y] : in.shared) b_shared[y] = true;
  std::vector<std::size_t> new_b;
  for (std::size_t q = 0; q < in.B.size(); ++q)
    if (!b_shared[q]) new_b.push_back(q);
  const std::size_t pairs = new_a.size() * new_b.size();
  if (pairs > cap) throw CapExceeded(pairs, cap);
  std::vector<Rat> vals;
  for (const auto& v : rfin)
    if (v.sign() > 0) vals.push_back(v);

  const std::size_t nb = in.B.size(), n = nb + new_a.size();
  std::vector<std::size_t> ea(in.A.size());
  for (const auto& [x, y] : in.shared) ea[x] = y;
  for (std::size_t i = 0; i < new_a.size(); ++i) ea[new_a[i]] = nb + i;

  // Full table with the cross pairs as unknowns.
  std::vector<std::vector<Rat>> t(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j) t[i][j] = in.B.d(i, j);
  for (std::size_t i = 0; i < in.A.size(); ++i)
    for (std::size_t j = 0; j < in.A.size(); ++j) t[ea[i]][ea[j]] = in.A.d(i, j);

  std::vector<AmalgamResult> out;
  if (pairs > 0 && vals.empty()) return out;
  std::vector<std::size_t> digit(pairs, 0);
  for (;;) {
    for (std::size_t k = 0; k < pairs; ++k) {
      std::size_t i = nb + k / new_b.size(), j = new_b[k % new_b.size()];
      t[i][j] = t[j][i] = vals[digit[k]];
    }
    std::vector<Rat> up;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) up.push_back(t[i][j]);
    auto c = FiniteMetricSpace::from_upper_unchecked(n, std::move(up));
    if (c.violations().empty()) {
      AmalgamResult r;
      r.C = c;
      r.embed_a = ea;
      r.embed_b.resize(nb);
      for (std::size_t i = 0; i < nb; ++i) r.embed_b[i] = i;
      out.push_back(std::move(r));
    }
    std::size_t k = 0;
    while (k < pairs && ++digit[k] == vals.size()) digit[k++] = 0;
    if (k == pairs) break;
  }
  return out;
}

/// Whether `res` really amalgamates the instance: both embeddings are
/// isometric, the shared points coincide, C is metric, and dist(C) lies in R
/// when R is given.
inline bool validate_amalgam(const AmalgamInstance& in, const AmalgamResult& res, const DistanceSet* r = nullptr) {
  if (!res.C.violations().empty()) return false;
  auto iso = [&](const FiniteMetricSpace& s, const std::vector<std::size_t>& e) {
    if (e.size() != s.size()) return false;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (e[i] >= res.C.size()) return false;
      for (std::size_t j = i + 1; j < s.size(); ++j)
        if (e[i] == e[j] || res.C.d(e[i], e[j]) != s.d(i, j)) return false;
    }
    return true;
  };
  if (!iso(in.A, res.embed_a) || !iso(in.B, res.embed_b)) return false;
  for (const auto& [x, y] : in.shared)
    if (res.embed_a[x] != res.embed_b[y]) return false;
  if (r)
    for (const auto& v : dist_set(res.C))
      if (!r->contains(v)) return false;
  return true;
}

/// The instance built from a 4-values failure: A = {v,w,p}, B = {v,w,q}
/// with d(v,w)=x, d(p,v)=a, d(p,w)=b, d(q,w)=c, d(q,v)=d.  Its amalgams
/// over R are exactly the y in R with y ~> (a,d,c,b).
inline AmalgamInstance witness_instance(const FourValuesWitness& w) {
  AmalgamInstance in;
  in.A = FiniteMetricSpace::from_upper(3, {w.x, w.q.a, w.q.b});
  in.B = FiniteMetricSpace::from_upper(3, {w.x, w.q.d, w.q.c});
  in.shared = {{0, 0}, {1, 1}};
  return in;
}

}  // namespace urysohn
