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

// Exact Fourier-Motzkin elimination over the rationals with strict and
// non-strict inequalities.

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "urysohn/rational.hpp"

namespace urysohn {

/// sum(coef[i] * v[i]) + k >= 0, or > 0 when strict.
struct LinCon {
  std::vector<Rat> coef;
  Rat k;
  bool strict = false;
};

class LinearSystem {
 public:
  explicit LinearSystem(std::size_t nvars) : n_(nvars) {}

  [[nodiscard]] std::size_t nvars() const { return n_; }
  [[nodiscard]] const std::vector<LinCon>& constraints() const { return cons_; }

  /// Adds sum(terms) + k >= 0 (or > 0).
  void add(const std::vector<std::pair<std::size_t, Rat>>& terms, const Rat& k, bool strict) {
    LinCon c{std::vector<Rat>(n_), k, strict};
    for (const auto& [i, v] : terms) c.coef.at(i) += v;
    cons_.push_back(std::move(c));
  }

  /// A satisfying assignment, or nullopt.  Variables are eliminated from the
  /// last to the first; the witness fixes the first variable first, each
  /// time taking the simplest rational allowed by the earlier choices.
  [[nodiscard]] std::optional<std::vector<Rat>> solve() const {
    std::vector<std::vector<LinCon>> stages;
    auto cur = normalize(cons_);
    if (!cur) return std::nullopt;
    stages.push_back(*cur);
    for (std::size_t v = n_; v-- > 0;) {
      std::vector<LinCon> pos, neg, next;
      for (const auto& c : stages.back()) {
        int s = c.coef[v].sign();
        (s > 0 ? pos : s < 0 ? neg : next).push_back(c);
      }
      for (const auto& p : pos)
        for (const auto& q : neg) {
          Rat wp = -q.coef[v], wq = p.coef[v];
          LinCon r{std::vector<Rat>(n_), wp * p.k + wq * q.k, p.strict || q.strict};
          for (std::size_t i = 0; i < n_; ++i) r.coef[i] = wp * p.coef[i] + wq * q.coef[i];
          r.coef[v] = Rat(0);
          next.push_back(std::move(r));
        }
      auto norm = normalize(next);
      if (!norm) return std::nullopt;
      stages.push_back(std::move(*norm));
    }
    // stages[k] mentions variables 0 .. n-1-k.
    std::vector<Rat> val(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      const auto& sys = stages[n_ - 1 - i];
      std::optional<Rat> lo;
      bool lo_strict = false;
      std::optional<Rat> hi;
      bool hi_strict = false;
      for (const auto& c : sys) {
        int s = c.coef[i].sign();
        if (s == 0) continue;
        Rat rest = c.k;
        for (std::size_t j = 0; j < i; ++j) rest += c.coef[j] * val[j];
        Rat bound = -rest / c.coef[i];
        if (s > 0) {
          if (!lo || bound > *lo || (bound == *lo && c.strict)) { lo = bound; lo_strict = c.strict; }
        } else {
          if (!hi || bound < *hi || (bound == *hi && c.strict)) { hi = bound; hi_strict = c.strict; }
        }
      }
      if (!lo) {
        if (!hi) { val[i] = Rat(0); continue; }
        lo = std::min(Rat(0), *hi - Rat(1));
        lo_strict = false;
      }
      auto pick = simplest_in(*lo, !lo_strict, hi ? XRat(*hi) : XRat::infinity(), !hi_strict);
      if (!pick) return std::nullopt;  // unreachable for exact elimination
      val[i] = *pick;
    }
    return val;
  }

 private:
  // Scales each constraint so its first nonzero coefficient is +-1, drops
  // duplicates keeping the tightest, and rejects false constant rows.
  static std::optional<std::vector<LinCon>> normalize(const std::vector<LinCon>& in) {
    std::map<std::vector<Rat>, std::pair<Rat, bool>> best;
    for (const auto& c : in) {
      std::size_t f = 0;
      while (f < c.coef.size() && c.coef[f].sign() == 0) ++f;
      if (f == c.coef.size()) {
        int s = c.k.sign();
        if (s < 0 || (s == 0 && c.strict)) return std::nullopt;
        continue;
      }
      Rat scale = abs(c.coef[f]);
      std::vector<Rat> coef(c.coef.size());
      for (std::size_t i = 0; i < coef.size(); ++i) coef[i] = c.coef[i] / scale;
      Rat k = c.k / scale;
      auto it = best.find(coef);
      if (it == best.end()) {
        best.emplace(std::move(coef), std::make_pair(k, c.strict));
      } else if (k < it->second.first || (k == it->second.first && c.strict)) {
        it->second = {k, c.strict};
      }
    }
    std::vector<LinCon> out;
    out.reserve(best.size());
    for (auto& [coef, ks] : best) out.push_back({coef, ks.first, ks.second});
    return out;
  }

  std::size_t n_;
  std::vector<LinCon> cons_;
};

}  // namespace urysohn
