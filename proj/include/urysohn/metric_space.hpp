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
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "urysohn/error.hpp"
#include "urysohn/rational.hpp"

namespace urysohn {

/// True iff |a-b| <= c <= a+b.  Negative inputs are rejected.
inline bool is_metric_triple(const Rat& a, const Rat& b, const Rat& c) {
  if (a.sign() < 0 || b.sign() < 0 || c.sign() < 0)
    throw std::invalid_argument("is_metric_triple: negative distance");
  return abs(a - b) <= c && c <= a + b;
}

struct Violation {
  enum class Kind { NotSquare, NonZeroDiagonal, NegativeDistance, ZeroOffDiagonal, Asymmetry, TriangleViolation };
  Kind kind;
  std::size_t i = 0, j = 0, k = 0;

  [[nodiscard]] std::string name() const {
    switch (kind) {
      case Kind::NotSquare: return "NotSquare";
      case Kind::NonZeroDiagonal: return "NonZeroDiagonal";
      case Kind::NegativeDistance: return "NegativeDistance";
      case Kind::ZeroOffDiagonal: return "ZeroOffDiagonal";
      case Kind::Asymmetry: return "Asymmetry";
      case Kind::TriangleViolation: return "TriangleViolation";
    }
    return "?";
  }
  [[nodiscard]] std::string str() const {
    std::string s = name() + "(" + std::to_string(i) + "," + std::to_string(j);
    if (kind == Kind::TriangleViolation) s += "," + std::to_string(k);
    return s + ")";
  }
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Thrown by validate_space; carries every violation found.  For a triangle
/// violation, (i,j) is the edge exceeding the sum of the other two.
class SpaceError : public Error {
 public:
  explicit SpaceError(std::vector<Violation> v)
      : Error(v.empty() ? "SpaceError" : v.front().name(), describe(v)), violations_(std::move(v)) {}
  [[nodiscard]] const std::vector<Violation>& violations() const { return violations_; }

 private:
  static std::string describe(const std::vector<Violation>& v) {
    std::string s = "invalid metric table:";
    for (std::size_t n = 0; n < v.size() && n < 8; ++n) s += " " + v[n].str();
    if (v.size() > 8) s += " ... (" + std::to_string(v.size()) + " total)";
    return s;
  }
  std::vector<Violation> violations_;
};

/// Finite metric space on points 0..n-1 with exact rational distances.
/// Immutable; construct through validate_space() or the checked factories.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;

  [[nodiscard]] std::size_t size() const { return n_; }
  [[nodiscard]] bool empty() const { return n_ == 0; }

  [[nodiscard]] const Rat& d(std::size_t i, std::size_t j) const {
    static const Rat zero{0};
    if (i == j) return zero;
    if (i > j) std::swap(i, j);
    return upper_[slot(i, j)];
  }

  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
  [[nodiscard]] std::string label(std::size_t i) const {
    return i < labels_.size() ? labels_[i] : std::to_string(i);
  }

  /// Upper triangle in row-major order: (0,1),(0,2),...,(1,2),...
  [[nodiscard]] const std::vector<Rat>& upper() const { return upper_; }

  friend bool operator==(const FiniteMetricSpace& a, const FiniteMetricSpace& b) {
    return a.n_ == b.n_ && a.upper_ == b.upper_;
  }

  /// Builds from an upper triangle, reporting every violation.
  static FiniteMetricSpace from_upper(std::size_t n, std::vector<Rat> upper, std::vector<std::string> labels = {}) {
    FiniteMetricSpace m = from_upper_unchecked(n, std::move(upper), std::move(labels));
    auto v = m.violations();
    if (!v.empty()) throw SpaceError(std::move(v));
    return m;
  }

  /// Caller guarantees the metric axioms; used by constructions that have
  /// already checked every new triangle.
  static FiniteMetricSpace from_upper_unchecked(std::size_t n, std::vector<Rat> upper,
                                                std::vector<std::string> labels = {}) {
    if (upper.size() != n * (n - (n > 0)) / 2)
      throw std::invalid_argument("upper triangle has wrong length");
    FiniteMetricSpace m;
    m.n_ = n;
    m.upper_ = std::move(upper);
    m.labels_ = std::move(labels);
    return m;
  }

  /// Appends one point with the given distances to points 0..n-1 (unchecked).
  [[nodiscard]] FiniteMetricSpace with_point_unchecked(const std::vector<Rat>& to_existing) const {
    if (to_existing.size() != n_) throw std::invalid_argument("with_point: wrong distance count");
    std::size_t n = n_ + 1;
    std::vector<Rat> up;
    up.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) up.push_back(d(i, j));
      up.push_back(to_existing[i]);
    }
    auto labels = labels_;
    if (!labels.empty()) labels.push_back(std::to_string(n_));
    return from_upper_unchecked(n, std::move(up), std::move(labels));
  }

  /// Positivity and every triangle; empty when the space is metric.
  [[nodiscard]] std::vector<Violation> violations() const {
    std::vector<Violation> out;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) {
        int s = d(i, j).sign();
        if (s < 0) out.push_back({Violation::Kind::NegativeDistance, i, j});
        if (s == 0) out.push_back({Violation::Kind::ZeroOffDiagonal, i, j});
      }
    if (!out.empty()) return out;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        for (std::size_t k = 0; k < n_; ++k) {
          if (k == i || k == j) continue;
          if (d(i, j) > d(i, k) + d(j, k)) out.push_back({Violation::Kind::TriangleViolation, i, j, k});
        }
    return out;
  }

 private:
  [[nodiscard]] std::size_t slot(std::size_t i, std::size_t j) const {
    return i * n_ - i * (i + 1) / 2 + (j - i - 1);
  }

  std::size_t n_ = 0;
  std::vector<Rat> upper_;
  std::vector<std::string> labels_;
};

/// Checks a full square table (symmetry, zero diagonal, positivity,
/// triangles) and returns the space, or throws SpaceError listing every
/// violation.
inline FiniteMetricSpace validate_space(const std::vector<std::vector<Rat>>& table,
                                        std::vector<std::string> labels = {}) {
  const std::size_t n = table.size();
  std::vector<Violation> bad;
  for (std::size_t i = 0; i < n; ++i)
    if (table[i].size() != n) bad.push_back({Violation::Kind::NotSquare, i, table[i].size()});
  if (!bad.empty()) throw SpaceError(std::move(bad));
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i][i].sign() != 0) bad.push_back({Violation::Kind::NonZeroDiagonal, i, i});
    for (std::size_t j = i + 1; j < n; ++j)
      if (table[i][j] != table[j][i]) bad.push_back({Violation::Kind::Asymmetry, i, j});
  }
  if (!bad.empty()) throw SpaceError(std::move(bad));
  std::vector<Rat> up;
  up.reserve(n * (n - (n > 0)) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) up.push_back(table[i][j]);
  return FiniteMetricSpace::from_upper(n, std::move(up), std::move(labels));
}

/// Induced subspace on `points`, in the given order.
inline FiniteMetricSpace restrict(const FiniteMetricSpace& m, const std::vector<std::size_t>& points) {
  std::set<std::size_t> seen;
  for (auto p : points) {
    if (p >= m.size()) throw std::out_of_range("restrict: point " + std::to_string(p) + " out of range");
    if (!seen.insert(p).second) throw std::invalid_argument("restrict: duplicate point " + std::to_string(p));
  }
  std::vector<Rat> up;
  const std::size_t n = points.size();
  up.reserve(n * (n - (n > 0)) / 2);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) up.push_back(m.d(points[a], points[b]));
  std::vector<std::string> labels;
  if (!m.labels().empty())
    for (auto p : points) labels.push_back(m.label(p));
  return FiniteMetricSpace::from_upper_unchecked(n, std::move(up), std::move(labels));
}

/// Sorted distinct distances, including 0 for a nonempty space.
inline std::vector<Rat> dist_set(const FiniteMetricSpace& m) {
  std::vector<Rat> out;
  if (m.empty()) return out;
  out = m.upper();
  out.push_back(Rat(0));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Prescribed distances from a prospective new point to finitely many
/// points of a host space.  Values are strictly positive.
class TypeFunction {
 public:
  TypeFunction() = default;
  explicit TypeFunction(std::vector<std::pair<std::size_t, Rat>> entries) : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].second.sign() <= 0) throw std::invalid_argument("type function values must be positive");
      if (i > 0 && entries_[i].first == entries_[i - 1].first)
        throw std::invalid_argument("type function has duplicate domain point");
    }
  }

  [[nodiscard]] const std::vector<std::pair<std::size_t, Rat>>& entries() const { return entries_; }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] std::vector<std::size_t> dom() const {
    std::vector<std::size_t> out;
    for (const auto& [p, v] : entries_) out.push_back(p);
    return out;
  }
  [[nodiscard]] std::vector<Rat> values() const {
    std::vector<Rat> out;
    for (const auto& [p, v] : entries_) out.push_back(v);
    return out;
  }
  /// Distinct values, sorted.
  [[nodiscard]] std::vector<Rat> dist() const {
    auto v = values();
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  }
  [[nodiscard]] std::string str() const {
    std::string d, v;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i) { d += ","; v += ","; }
      d += std::to_string(entries_[i].first);
      v += entries_[i].second.str();
    }
    return d + ":" + v;
  }
  friend bool operator==(const TypeFunction&, const TypeFunction&) = default;

 private:
  std::vector<std::pair<std::size_t, Rat>> entries_;
};

class NotMetricType : public Error {
 public:
  NotMetricType(std::size_t x, std::size_t y)
      : Error("NotMetricType", "type function violates the triangle inequality on pair (" + std::to_string(x) +
                                   "," + std::to_string(y) + ")"),
        x_(x), y_(y) {}
  [[nodiscard]] std::size_t x() const { return x_; }
  [[nodiscard]] std::size_t y() const { return y_; }

 private:
  std::size_t x_, y_;
};

namespace detail {
inline void check_domain(const FiniteMetricSpace& m, const TypeFunction& t) {
  for (const auto& [p, v] : t.entries())
    if (p >= m.size()) throw std::out_of_range("type function point " + std::to_string(p) + " out of range");
}
}  // namespace detail

/// First pair (x,y) of dom(t), host indices, with
/// not(|t(x)-t(y)| <= d(x,y) <= t(x)+t(y)); nullopt if t is metric.
inline std::optional<std::pair<std::size_t, std::size_t>> first_nonmetric_pair(const FiniteMetricSpace& m,
                                                                               const TypeFunction& t) {
  detail::check_domain(m, t);
  const auto& e = t.entries();
  for (std::size_t a = 0; a < e.size(); ++a)
    for (std::size_t b = a + 1; b < e.size(); ++b)
      if (!is_metric_triple(e[a].second, e[b].second, m.d(e[a].first, e[b].first)))
        return std::pair{e[a].first, e[b].first};
  return std::nullopt;
}

/// Sp(t): the subspace on dom(t) (ascending) plus one new last point at
/// the prescribed distances.
inline FiniteMetricSpace span_space(const FiniteMetricSpace& m, const TypeFunction& t) {
  if (auto bad = first_nonmetric_pair(m, t)) throw NotMetricType(bad->first, bad->second);
  return restrict(m, t.dom()).with_point_unchecked(t.values());
}

/// Points outside dom(t) at exactly the prescribed distances.
inline std::vector<std::size_t> typeset(const FiniteMetricSpace& m, const TypeFunction& t) {
  detail::check_domain(m, t);
  std::vector<std::size_t> out;
  const auto& e = t.entries();
  for (std::size_t y = 0; y < m.size(); ++y) {
    bool ok = true;
    for (const auto& [x, v] : e) {
      if (x == y || m.d(y, x) != v) { ok = false; break; }
    }
    if (ok) out.push_back(y);
  }
  return out;
}

/// Injective partial map between point indices.
using PartialIsometry = std::map<std::size_t, std::size_t>;

inline bool is_partial_isometry(const FiniteMetricSpace& a, const FiniteMetricSpace& b, const PartialIsometry& f) {
  std::set<std::size_t> images;
  for (const auto& [x, y] : f) {
    if (x >= a.size() || y >= b.size()) return false;
    if (!images.insert(y).second) return false;
  }
  for (auto i = f.begin(); i != f.end(); ++i)
    for (auto j = std::next(i); j != f.end(); ++j)
      if (a.d(i->first, j->first) != b.d(i->second, j->second)) return false;
  return true;
}

/// Backtracking search for an isometric embedding of all of `a` into `b`
/// extending `seed`.  Returns nullopt when the search is exhausted.
inline std::optional<PartialIsometry> find_isometry(const FiniteMetricSpace& a, const FiniteMetricSpace& b,
                                                    const PartialIsometry& seed = {}, std::size_t cap = 8) {
  if (a.size() > cap) throw CapExceeded(a.size(), cap);
  if (!is_partial_isometry(a, b, seed)) return std::nullopt;
  if (a.size() > b.size()) return std::nullopt;
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!seed.count(i)) todo.push_back(i);
  std::vector<std::optional<std::size_t>> img(a.size());
  std::vector<bool> used(b.size(), false);
  for (const auto& [x, y] : seed) { img[x] = y; used[y] = true; }

  auto rec = [&](auto&& self, std::size_t k) -> bool {
    if (k == todo.size()) return true;
    std::size_t x = todo[k];
    for (std::size_t y = 0; y < b.size(); ++y) {
      if (used[y]) continue;
      bool ok = true;
      for (std::size_t z = 0; z < a.size() && ok; ++z)
        if (img[z] && a.d(x, z) != b.d(y, *img[z])) ok = false;
      if (!ok) continue;
      img[x] = y;
      used[y] = true;
      if (self(self, k + 1)) return true;
      img[x].reset();
      used[y] = false;
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  PartialIsometry out;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = *img[i];
  return out;
}

// ---------------------------------------------------------------------------
// Space file format:
//   n=<count>
//   d <i> <j> = <p>/<q>        (i<j, row-major, lowest terms)
// Lines starting with '#' are comments.

inline void write_space(std::ostream& os, const FiniteMetricSpace& m) {
  os << "n=" << m.size() << "\n";
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) os << "d " << i << " " << j << " = " << m.d(i, j).str() << "\n";
}

inline std::string space_to_string(const FiniteMetricSpace& m) {
  std::ostringstream os;
  write_space(os, m);
  return os.str();
}

/// Reads a space file; the table is validated.  Errors report 1-based
/// line numbers as positions.
inline FiniteMetricSpace read_space(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::size_t> n;
  std::map<std::pair<std::size_t, std::size_t>, Rat> entries;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (!n) {
      if (tok.rfind("n=", 0) != 0) throw ParseError(lineno, "expected 'n=<count>'");
      try {
        std::size_t pos = 0;
        long v = std::stol(tok.substr(2), &pos);
        if (pos != tok.size() - 2 || v < 0) throw std::invalid_argument("n");
        n = static_cast<std::size_t>(v);
      } catch (const std::exception&) {
        throw ParseError(lineno, "bad point count '" + tok + "'");
      }
      continue;
    }
    std::size_t i = 0, j = 0;
    std::string eq, value, extra;
    if (tok != "d" || !(ls >> i >> j >> eq >> value) || eq != "=" || (ls >> extra))
      throw ParseError(lineno, "expected 'd <i> <j> = <p>/<q>'");
    if (i >= j || j >= *n) throw ParseError(lineno, "pair indices must satisfy i<j<n");
    Rat r;
    try {
      r = Rat::parse(value);
    } catch (const std::invalid_argument&) {
      throw ParseError(lineno, "bad rational '" + value + "'");
    }
    if (!entries.emplace(std::pair{i, j}, r).second) throw ParseError(lineno, "duplicate pair");
  }
  if (!n) throw ParseError(lineno, "missing 'n=<count>' header");
  std::vector<Rat> up;
  for (std::size_t i = 0; i < *n; ++i)
    for (std::size_t j = i + 1; j < *n; ++j) {
      auto it = entries.find({i, j});
      if (it == entries.end())
        throw ParseError(lineno, "missing pair " + std::to_string(i) + " " + std::to_string(j));
      up.push_back(it->second);
    }
  return FiniteMetricSpace::from_upper(*n, std::move(up));
}

inline FiniteMetricSpace space_from_string(const std::string& text) {
  std::istringstream is(text);
  return read_space(is);
}

}  // namespace urysohn
