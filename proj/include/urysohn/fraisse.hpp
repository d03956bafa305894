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

// Finite approximations of the countable universal space U_R, grown by
// realizing restricted type functions one at a time.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "urysohn/amalgamation.hpp"
#include "urysohn/distance_set.hpp"
#include "urysohn/four_values.hpp"
#include "urysohn/metric_space.hpp"

namespace urysohn {

class NotRestricted : public Error {
 public:
  explicit NotRestricted(const std::string& why) : Error("NotRestricted", "type is not restricted: " + why) {}
};

class Unrealized : public Error {
 public:
  explicit Unrealized(const std::string& type) : Error("Unrealized", "type " + type + " not realized within budget") {}
};

struct BuildLogEntry {
  std::size_t stage;
  TypeFunction type;
  bool realized;  // false: an existing point already realized it
  std::size_t point;

  [[nodiscard]] std::string str() const {
    return "stage=" + std::to_string(stage) + " type=" + type.str() + " action=" + (realized ? "realized" : "skipped") +
           " point=" + std::to_string(point);
  }
};

struct BuildOptions {
  std::uint64_t seed = 1;
  std::size_t stages = 0;         // processed types; 0 = until saturated
  std::size_t max_domain = 3;     // largest type domain scheduled
  std::size_t max_points = 2000;  // hard stop
  std::size_t value_budget = 12;  // values taken from an infinite R
  bool random_choice = true;      // seeded choice among admissible values
  bool log_skipped = true;
};

/// Growing finite space with distances stored as codes into `values_`
/// (code 0 is distance 0).
class ApproximationState {
 public:
  ApproximationState(DistanceSet r, std::vector<Rat> type_values, std::uint64_t seed, bool random_choice)
      : r_(std::move(r)), rng_(seed), random_(random_choice) {
    values_.push_back(Rat(0));
    for (const auto& v : type_values)
      if (v.sign() > 0) type_values_.push_back(v);
    std::sort(type_values_.begin(), type_values_.end());
    type_values_.erase(std::unique(type_values_.begin(), type_values_.end()), type_values_.end());
    for (const auto& v : type_values_) code_of(v);
    dm_.push_back({0});
  }

  [[nodiscard]] const DistanceSet& R() const { return r_; }
  [[nodiscard]] std::size_t size() const { return dm_.size(); }
  [[nodiscard]] const std::vector<Rat>& type_values() const { return type_values_; }
  [[nodiscard]] const std::vector<BuildLogEntry>& log() const { return log_; }
  [[nodiscard]] std::size_t stage() const { return stage_; }
  [[nodiscard]] std::size_t skipped() const { return skipped_; }
  [[nodiscard]] const Rat& d(std::size_t i, std::size_t j) const { return values_[dm_[i][j]]; }
  [[nodiscard]] std::uint32_t code(std::size_t i, std::size_t j) const { return dm_[i][j]; }

  [[nodiscard]] FiniteMetricSpace space() const {
    const std::size_t n = size();
    std::vector<Rat> up;
    up.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) up.push_back(d(i, j));
    return FiniteMetricSpace::from_upper_unchecked(n, std::move(up));
  }

  [[nodiscard]] std::optional<std::uint32_t> find_code(const Rat& v) const {
    auto it = codes_.find(v);
    if (it == codes_.end()) return std::nullopt;
    return it->second;
  }

  std::uint32_t code_of(const Rat& v) {
    auto it = codes_.find(v);
    if (it != codes_.end()) return it->second;
    auto c = static_cast<std::uint32_t>(values_.size());
    values_.push_back(v);
    codes_.emplace(v, c);
    return c;
  }

  /// Points outside dom(t) at exactly the prescribed distances.
  [[nodiscard]] std::vector<std::size_t> typeset(const TypeFunction& t) const {
    std::vector<std::uint32_t> want;
    for (const auto& [x, v] : t.entries()) {
      auto it = codes_.find(v);
      if (it == codes_.end()) return {};
      want.push_back(it->second);
    }
    std::vector<std::size_t> out;
    for (std::size_t y = 0; y < size(); ++y) {
      bool ok = true;
      std::size_t k = 0;
      for (const auto& [x, v] : t.entries()) {
        if (dm_[y][x] != want[k++]) { ok = false; break; }
      }
      if (ok) out.push_back(y);
    }
    return out;
  }

  /// Throws NotRestricted unless Sp(t) is metric with distances in R.
  void check_restricted(const TypeFunction& t) const {
    for (const auto& [x, v] : t.entries()) {
      if (x >= size()) throw NotRestricted("point " + std::to_string(x) + " not in the space");
      if (!r_.contains(v)) throw NotRestricted("value " + v.str() + " not in R");
    }
    const auto& e = t.entries();
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t j = i + 1; j < e.size(); ++j)
        if (!is_metric_triple(e[i].second, e[j].second, d(e[i].first, e[j].first)))
          throw NotRestricted("pair (" + std::to_string(e[i].first) + "," + std::to_string(e[j].first) +
                              ") violates |t(x)-t(y)| <= d(x,y) <= t(x)+t(y)");
  }

  /// is_metric_triple on coded values, memoized.
  [[nodiscard]] bool metric_codes(std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
    if (a > b) std::swap(a, b);
    std::uint64_t key = (static_cast<std::uint64_t>(a) << 42) | (static_cast<std::uint64_t>(b) << 21) | c;
    auto it = tri_cache_.find(key);
    if (it != tri_cache_.end()) return it->second;
    bool ok = is_metric_triple(values_[a], values_[b], values_[c]);
    tri_cache_.emplace(key, ok);
    return ok;
  }

  void count_skip() {
    ++stage_;
    ++skipped_;
  }
  [[nodiscard]] std::size_t code_count() const { return values_.size(); }

  /// Logs t as already realized by `point` (caller checked).
  void record_skip(const TypeFunction& t, std::size_t point, bool log_skip = true) {
    ++stage_;
    ++skipped_;
    if (log_skip) log_.push_back({stage_, t, false, point});
  }

  /// Realizes t: no-op when an existing point already does, else one new
  /// point via one-point amalgamation of Sp(t) with M over dom(t).
  std::size_t realize(const TypeFunction& t, bool log_skip = true) {
    check_restricted(t);
    auto ts = typeset(t);
    ++stage_;
    if (!ts.empty()) {
      ++skipped_;
      if (log_skip) log_.push_back({stage_, t, false, ts.front()});
      return ts.front();
    }
    std::size_t p = add_point(t);
    log_.push_back({stage_, t, true, p});
    return p;
  }

 private:
  std::size_t add_point(const TypeFunction& t) {
    const std::size_t n = size();
    std::vector<std::optional<std::uint32_t>> row(n);
    std::vector<std::size_t> known;
    for (const auto& [x, v] : t.entries()) {
      row[x] = code_of(v);
      known.push_back(x);
    }
    for (std::size_t q = 0; q < n; ++q) {
      if (row[q]) continue;
      Rat u(0);
      XRat l = XRat::infinity();
      for (std::size_t v : known) {
        const Rat& a = values_[*row[v]];
        const Rat& b = d(q, v);
        Rat lo = abs(a - b);
        if (lo > u) u = lo;
        Rat hi = a + b;
        if (XRat(hi) < l) l = hi;
      }
      if (!l.is_inf() && u > l.value()) throw EmptyChoiceInterval(n, q, u, l.value());
      Window w{u, u.sign() > 0, l, !l.is_inf()};
      std::vector<const Rat*> cands;
      for (const auto& v : type_values_) {
        if (!l.is_inf() && v > l.value()) break;
        if (w.contains(v)) cands.push_back(&v);
      }
      Rat y;
      if (!cands.empty()) {
        std::size_t k = 0;
        if (random_ && cands.size() > 1) k = std::uniform_int_distribution<std::size_t>(0, cands.size() - 1)(rng_);
        y = *cands[k];
      } else {
        auto pk = pick(r_, w).value;
        if (!pk) throw EmptyChoiceInterval(n, q, u, l.is_inf() ? u : l.value());
        y = *pk;
      }
      row[q] = code_of(y);
      known.push_back(q);
    }
    for (std::size_t q = 0; q < n; ++q) dm_[q].push_back(*row[q]);
    std::vector<std::uint32_t> last(n + 1, 0);
    for (std::size_t q = 0; q < n; ++q) last[q] = *row[q];
    dm_.push_back(std::move(last));
    return n;
  }

  DistanceSet r_;
  std::vector<Rat> type_values_;
  std::vector<Rat> values_;
  std::map<Rat, std::uint32_t> codes_;
  mutable std::unordered_map<std::uint64_t, bool> tri_cache_;
  std::vector<std::vector<std::uint32_t>> dm_;
  std::vector<BuildLogEntry> log_;
  std::size_t stage_ = 0, skipped_ = 0;
  std::mt19937_64 rng_;
  bool random_;
};

namespace detail {

// Visits all k-subsets of {0..n-1} (ascending) that contain an element >= from.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, std::size_t from, F&& f) {
  std::vector<std::size_t> s(k);
  auto rec = [&](auto&& self, std::size_t pos, std::size_t start, bool fresh) -> bool {
    if (pos == k) return fresh ? f(s) : true;
    for (std::size_t i = start; i < n; ++i) {
      s[pos] = i;
      if (!self(self, pos + 1, i + 1, fresh || i >= from)) return false;
    }
    return true;
  };
  if (k == 0) return;
  rec(rec, 0, 0, false);
}

// Visits every value assignment on `dom` whose span is metric, in
// lexicographic order of value indices.
template <class F>
bool for_each_metric_type(const ApproximationState& st, const std::vector<std::size_t>& dom,
                          const std::vector<Rat>& vals, F&& f) {
  std::vector<std::optional<std::uint32_t>> vc;
  for (const auto& v : vals) vc.push_back(st.find_code(v));
  std::vector<std::size_t> idx(dom.size());
  auto metric = [&](std::size_t i, std::size_t j, std::size_t x, std::size_t y) {
    if (vc[i] && vc[j]) return st.metric_codes(*vc[i], *vc[j], st.code(x, y));
    return is_metric_triple(vals[i], vals[j], st.d(x, y));
  };
  auto rec = [&](auto&& self, std::size_t pos) -> bool {
    if (pos == dom.size()) return f(idx);
    for (std::size_t i = 0; i < vals.size(); ++i) {
      bool ok = true;
      for (std::size_t j = 0; j < pos && ok; ++j) ok = metric(i, idx[j], dom[pos], dom[j]);
      if (!ok) continue;
      idx[pos] = i;
      if (!self(self, pos + 1)) return false;
    }
    return true;
  };
  return rec(rec, 0);
}

inline TypeFunction make_type(const std::vector<std::size_t>& dom, const std::vector<std::size_t>& idx,
                              const std::vector<Rat>& vals) {
  std::vector<std::pair<std::size_t, Rat>> e;
  for (std::size_t i = 0; i < dom.size(); ++i) e.emplace_back(dom[i], vals[idx[i]]);
  return TypeFunction(std::move(e));
}

}  // namespace detail

/// Values a build draws type functions from: the positive elements of a
/// finite R, otherwise a swap-closed prefix of a dense enumeration.
inline std::vector<Rat> build_values(const DistanceSet& r, std::size_t budget) {
  std::vector<Rat> v;
  if (auto f = r.finite_points()) {
    v = *f;
  } else {
    v = swap_closed_subset(r, budget, 2, 2 * budget);
  }
  v.erase(std::remove_if(v.begin(), v.end(), [](const Rat& q) { return q.sign() <= 0; }), v.end());
  return v;
}

/// Stateful fair schedule.  Each round takes a snapshot of M and schedules,
/// in order of (|dom|, dom, values), every restricted type whose domain
/// meets the points added since the previous snapshot.
class Builder {
 public:
  Builder(const DistanceSet& r, BuildOptions opt)
      : opt_(opt), st_(r, build_values(r, opt.value_budget), opt.seed, opt.random_choice) {
    auto v = decide(r);
    if (v.fails())
      throw Error("Precondition", "R fails the 4-values condition (witness " + v.witness->str() + ")");
  }

  [[nodiscard]] const ApproximationState& state() const { return st_; }
  ApproximationState& state() { return st_; }

  /// Runs one round; returns the number of points added, or nullopt when
  /// the stage or point limit stopped it early.
  std::optional<std::size_t> round() {
    const std::size_t n = st_.size(), from = prev_;
    const std::size_t before = n;
    bool stopped = false;
    const auto& vals = st_.type_values();
    std::vector<std::uint32_t> vcode;
    for (const auto& v : vals) vcode.push_back(st_.code_of(v));
    for (std::size_t k = 1; k <= std::min(opt_.max_domain, n) && !stopped; ++k) {
      detail::for_each_subset(n, k, from, [&](const std::vector<std::size_t>& dom) {
        // First realizing point of each profile on dom (16-bit codes packed
        // into one word), kept current as points are added.
        const bool packed = dom.size() <= 4 && st_.code_count() < 65536;
        std::unordered_map<std::uint64_t, std::size_t> prof;
        std::size_t scanned = 0;
        auto rescan = [&] {
          for (; scanned < st_.size(); ++scanned) {
            std::uint64_t key = 0;
            for (std::size_t i = 0; i < dom.size(); ++i)
              key |= static_cast<std::uint64_t>(st_.code(scanned, dom[i])) << (16 * i);
            prof.emplace(key, scanned);
          }
        };
        return detail::for_each_metric_type(st_, dom, vals, [&](const std::vector<std::size_t>& idx) {
          if ((opt_.stages && st_.stage() >= opt_.stages) || st_.size() >= opt_.max_points) {
            stopped = true;
            return false;
          }
          if (!packed) {
            st_.realize(detail::make_type(dom, idx, vals), opt_.log_skipped);
            return true;
          }
          rescan();
          std::uint64_t key = 0;
          for (std::size_t i = 0; i < idx.size(); ++i) key |= static_cast<std::uint64_t>(vcode[idx[i]]) << (16 * i);
          auto it = prof.find(key);
          if (it == prof.end()) {
            st_.realize(detail::make_type(dom, idx, vals), opt_.log_skipped);
          } else if (opt_.log_skipped) {
            st_.record_skip(detail::make_type(dom, idx, vals), it->second, true);
          } else {
            st_.count_skip();
          }
          return true;
        });
      });
    }
    prev_ = n;
    if (stopped) return std::nullopt;
    return st_.size() - before;
  }

  /// Rounds until one adds nothing (saturated) or a limit is hit.  Returns
  /// true when saturated.
  bool run() {
    for (;;) {
      auto added = round();
      if (!added) return false;
      if (*added == 0) return true;
    }
  }

 private:
  BuildOptions opt_;
  ApproximationState st_;
  std::size_t prev_ = 0;
};

inline ApproximationState build(const DistanceSet& r, const BuildOptions& opt = {}) {
  Builder b(r, opt);
  b.run();
  return b.state();
}

struct AuditReport {
  bool pass = true;
  std::size_t checked = 0;
  std::vector<TypeFunction> pending;

  [[nodiscard]] std::vector<std::string> lines(std::size_t max_pending = 20) const {
    std::vector<std::string> out{"audit=" + std::string(pass ? "pass" : "fail"), "checked=" + std::to_string(checked),
                                 "pending=" + std::to_string(pending.size())};
    for (std::size_t i = 0; i < pending.size() && i < max_pending; ++i)
      out.push_back("pending_type=" + pending[i].str());
    return out;
  }
};

/// Checks that every restricted type with at most `domain_cap` domain
/// points and values in `value_set` is realized in M.
inline AuditReport audit_extension(const ApproximationState& st, std::size_t domain_cap,
                                   const std::vector<Rat>& value_set) {
  AuditReport rep;
  std::vector<Rat> vals;
  for (const auto& v : value_set)
    if (v.sign() > 0 && st.R().contains(v)) vals.push_back(v);
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  const std::size_t n = st.size();
  for (std::size_t k = 1; k <= std::min(domain_cap, n); ++k)
    detail::for_each_subset(n, k, 0, [&](const std::vector<std::size_t>& dom) {
      // Profiles of every outside point on this domain.
      std::set<std::vector<std::uint32_t>> seen;
      std::vector<bool> in_dom(n, false);
      for (auto x : dom) in_dom[x] = true;
      for (std::size_t y = 0; y < n; ++y) {
        if (in_dom[y]) continue;
        std::vector<std::uint32_t> prof;
        for (auto x : dom) prof.push_back(st.code(y, x));
        seen.insert(std::move(prof));
      }
      detail::for_each_metric_type(st, dom, vals, [&](const std::vector<std::size_t>& idx) {
        ++rep.checked;
        std::vector<std::uint32_t> want;
        bool ok = true;
        for (std::size_t i = 0; i < dom.size() && ok; ++i) {
          auto c = st.find_code(vals[idx[i]]);
          if (c) want.push_back(*c);
          else ok = false;
        }
        ok = ok && seen.count(want);
        auto t = detail::make_type(dom, idx, vals);
        if (!ok) {
          rep.pass = false;
          rep.pending.push_back(std::move(t));
        }
        return true;
      });
      return true;
    });
  return rep;
}

/// Extends a partial isometry f of M into M to `target`.  The transported
/// type is realized by target itself when possible, else by the least
/// point; if no point realizes it and `budget` > 0 it is realized by a new
/// point.
inline PartialIsometry extend_isometry(ApproximationState& st, const PartialIsometry& f, std::size_t target,
                                       std::size_t budget = 1) {
  if (f.count(target)) return f;
  if (target >= st.size()) throw std::out_of_range("extend_isometry: target out of range");
  std::vector<std::pair<std::size_t, Rat>> e;
  for (const auto& [x, y] : f) {
    if (x >= st.size() || y >= st.size()) throw std::out_of_range("extend_isometry: map out of range");
    e.emplace_back(y, st.d(x, target));
  }
  TypeFunction t(std::move(e));
  std::set<std::size_t> image;
  for (const auto& [x, y] : f) image.insert(y);
  auto ts = st.typeset(t);
  std::optional<std::size_t> choice;
  for (auto y : ts)
    if (!image.count(y) && (y == target || !choice)) {
      if (y == target) { choice = y; break; }
      choice = y;
    }
  if (!choice) {
    if (budget == 0) throw Unrealized(t.str());
    choice = st.realize(t);
  }
  PartialIsometry g = f;
  g[target] = *choice;
  return g;
}

namespace detail {

// Isometry classes of all k-subsets (k <= 5) as canonical code arrays.
using AgeKey = std::array<std::uint32_t, 11>;  // [k, codes of the 10 pairs]

struct AgeKeyHash {
  std::size_t operator()(const AgeKey& a) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto v : a) h = (h ^ v) * 1099511628211ull;
    return h;
  }
};

inline std::unordered_set<AgeKey, AgeKeyHash> age_keys(const FiniteMetricSpace& m,
                                                       const std::map<Rat, std::uint32_t>& code,
                                                       std::size_t cap) {
  const std::size_t n = m.size();
  std::vector<std::vector<std::uint32_t>> dm(n, std::vector<std::uint32_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) dm[i][j] = code.at(m.d(i, j));
  std::unordered_set<AgeKey, AgeKeyHash> out;
  for (std::size_t k = 1; k <= std::min(cap, n); ++k) {
    std::vector<std::size_t> perm(k);
    for_each_subset(n, k, 0, [&](const std::vector<std::size_t>& s) {
      for (std::size_t i = 0; i < k; ++i) perm[i] = i;
      AgeKey best{};
      bool first = true;
      do {
        AgeKey key{};
        key[0] = static_cast<std::uint32_t>(k);
        std::size_t p = 1;
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = i + 1; j < k; ++j) key[p++] = dm[s[perm[i]]][s[perm[j]]];
        if (first || key < best) { best = key; first = false; }
      } while (std::next_permutation(perm.begin(), perm.end()));
      out.insert(best);
      return true;
    });
  }
  return out;
}

}  // namespace detail

/// Whether M and N have the same subspaces of at most `size_cap` points up
/// to isometry.
inline bool ages_equal(const FiniteMetricSpace& m, const FiniteMetricSpace& n, std::size_t size_cap = 5) {
  if (size_cap > 5) throw CapExceeded(size_cap, 5);
  std::map<Rat, std::uint32_t> code;
  for (const auto* s : {&m, &n})
    for (const auto& v : dist_set(*s)) code.emplace(v, 0);
  std::uint32_t c = 0;
  for (auto& [v, k] : code) k = c++;
  return detail::age_keys(m, code, size_cap) == detail::age_keys(n, code, size_cap);
}

}  // namespace urysohn
