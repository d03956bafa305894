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

// Expected-verdict table for known distance sets.

#include <string>
#include <vector>

#include "urysohn/approximation.hpp"
#include "urysohn/four_values.hpp"
#include "urysohn/setexpr.hpp"

namespace urysohn {

struct Fixture {
  enum class Kind { FourValues, Classify, AgeTest } kind;
  std::string name;
  std::string set;
  std::string expected;  // holds|fails, a verdict name, or witness|impossible
  std::vector<Rat> triangle{};  // AgeTest only: upper triangle of a 3-point space
  Rat eps{};
  std::string note{};
};

struct FixtureResult {
  const Fixture* fixture;
  bool pass;
  std::string observed;
  std::vector<std::string> detail;

  [[nodiscard]] std::string line() const {
    return std::string(pass ? "PASS " : "FAIL ") + fixture->name + " set=\"" + fixture->set +
           "\" expected=" + fixture->expected + " observed=" + observed;
  }
};

inline const char* dyadic_truncation() {
  return "{0} u [1/2,255/16] u [1/8,255/64] u [1/32,255/256] u [1/128,255/1024] u [1/512,255/4096] u "
         "[1/2048,255/16384]";
}

inline std::vector<Fixture> fixture_catalog() {
  using K = Fixture::Kind;
  std::vector<Fixture> c;
  for (int n = 1; n <= 12; ++n)
    c.push_back({K::FourValues, "4v-omega-" + std::to_string(n), "omega(" + std::to_string(n) + ")", "holds"});
  c.push_back({K::FourValues, "4v-gap-point", "[0,1] u {2}", "fails", {}, {}, "swap interval [3/2,3/2]"});
  // 10 ~> (11,1,1,9) pins y = 2, which these sets miss.
  c.push_back({K::FourValues, "4v-rays-closed-9", "[0,1] u [3,4] u [9,inf)", "fails", {}, {},
               "counterexample 10;11;1;1;9 gap [2,2]"});
  c.push_back({K::FourValues, "4v-rays-open-8", "[0,1] u [3,4] u (8,inf)", "fails", {}, {},
               "counterexample 9;10;1;1;17/2 gap [3/2,2]"});
  c.push_back({K::FourValues, "4v-rays-closed-8", "[0,1] u [3,4] u [8,inf)", "fails"});
  c.push_back({K::FourValues, "4v-dyadic-6", dyadic_truncation(), "holds"});
  c.push_back({K::FourValues, "4v-unit-interval", "[0,1]", "holds"});
  c.push_back({K::Classify, "class-sphere", "[0,1]", "UrysohnAdmissible"});
  c.push_back({K::Classify, "class-half-line", "[0,inf)", "UrysohnAdmissible"});
  c.push_back({K::Classify, "class-omega-4", "{0,1,2,3}", "UrysohnAdmissible"});
  c.push_back({K::Classify, "class-rational-unit", "Q[0,1]", "CountableUniversalOnly"});
  c.push_back({K::Classify, "class-gap-point", "[0,1] u {2}", "Inadmissible"});
  c.push_back({K::Classify, "class-rays-closed-8", "[0,1] u [3,4] u [8,inf)", "Inadmissible"});
  c.push_back({K::AgeTest, "age-211", "Q[0,1) u {2}", "impossible", {Rat(2), Rat(1), Rat(1)}, Rat(1, 4)});
  c.push_back({K::AgeTest, "age-221", "Q[0,1) u {2}", "witness", {Rat(2), Rat(2), Rat(1)}, Rat(1, 4)});
  return c;
}

inline FixtureResult run_fixture(const Fixture& f, std::uint64_t seed = 1) {
  FixtureResult r{&f, false, "", {}};
  auto set = parse_setexpr(f.set);
  switch (f.kind) {
    case Fixture::Kind::FourValues: {
      auto v = decide(set, 100'000, 8, Rat(16), seed);
      r.observed = truth_str(v.truth);
      r.detail = v.report_lines();
      bool valid = !v.witness || validate_witness(set, *v.witness);
      r.pass = valid && r.observed == f.expected;
      break;
    }
    case Fixture::Kind::Classify: {
      auto c = classify(set, 100'000, seed);
      r.observed = admissibility_str(c.verdict) + (c.conditional ? "?" : "");
      r.detail = c.lines();
      r.pass = r.observed == f.expected;
      break;
    }
    case Fixture::Kind::AgeTest: {
      auto a = FiniteMetricSpace::from_upper(3, f.triangle);
      auto t = completion_age_test(a, set, f.eps);
      r.observed = t.kind_str();
      r.detail.push_back("certificate=" + t.certificate);
      bool valid = !t.B || validate_age_witness(a, *t.B, set, f.eps);
      r.pass = valid && r.observed == f.expected;
      break;
    }
  }
  return r;
}

/// Runs the fixtures whose name contains `filter`.
inline std::vector<FixtureResult> run_catalog(const std::vector<Fixture>& cat, const std::string& filter = "",
                                              std::uint64_t seed = 1) {
  std::vector<FixtureResult> out;
  for (const auto& f : cat)
    if (f.name.find(filter) != std::string::npos) out.push_back(run_fixture(f, seed));
  return out;
}

}  // namespace urysohn
