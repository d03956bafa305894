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

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace urysohn;

namespace {

DistanceSet S(const char* text) { return parse_setexpr(text); }

FiniteMetricSpace tri(Rat a, Rat b, Rat c) { return FiniteMetricSpace::from_upper(3, {a, b, c}); }

}  // namespace

TEST(Gamma, ChainOnUnitInterval) {
  auto c = gamma(S("[0,1]"), 2, Rat(1, 2), Rat(1, 4));
  EXPECT_EQ(c.h, (std::vector<Rat>{Rat(1, 24), Rat(1, 8)}));
  EXPECT_TRUE(valid_chain(S("[0,1]"), c, Rat(1, 2), Rat(1, 4)));
}

TEST(Gamma, NoSmallElementWithoutZeroLimit) {
  EXPECT_THROW(gamma(S("{0,1,2}"), 2, Rat(1), Rat(1, 2)), NoSmallElement);
}

TEST(Gamma, StarFallsBackToPick) {
  // 1/3 is not in the set, so the pick in (0,1/2) is used.
  auto r = S("[0,1/4] u {1}");
  EXPECT_EQ(star(r, Rat(1)), Rat(1, 4));
  EXPECT_EQ(star(S("[0,1]"), Rat(1)), Rat(1, 3));
}

TEST(HJoin, ValidatesAgainstOracle) {
  auto r = S("[0,2]");
  auto A = tri(Rat(1), Rat(1), Rat(1));
  auto B = tri(Rat(1), Rat(1), Rat(1001, 1000));
  auto j = h_join(A, B, Rat(1, 2), Rat(1), r);
  EXPECT_TRUE(oracle::metric(j.P));
  EXPECT_TRUE(oracle::dist_in(j.P, r));
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_LT(j.P.d(i, 3 + i), Rat(1, 2));
    for (std::size_t k = 0; k < 3; ++k) {
      EXPECT_EQ(j.P.d(i, k), A.d(i, k));
      EXPECT_EQ(j.P.d(3 + i, 3 + k), B.d(i, k));
    }
  }
  for (const auto& s : j.trace) EXPECT_TRUE(s.ok()) << s.str();
}

TEST(HJoin, PreconditionGaps) {
  auto r = S("[0,2]");
  auto A = tri(Rat(1), Rat(1), Rat(1));
  EXPECT_THROW(h_join(A, tri(Rat(1), Rat(1), Rat(11, 10)), Rat(1, 2), Rat(1), r), PreconditionGap);
  EXPECT_THROW(h_join(A, FiniteMetricSpace::from_upper(2, {Rat(1)}), Rat(1, 2), Rat(1), r), PreconditionGap);
  EXPECT_THROW(h_join(A, A, Rat(1, 2), Rat(2), r), PreconditionGap);  // distance below r
}

TEST(HJoin, RandomPairsOverUnitInterval) {
  std::mt19937_64 rng(12);
  auto r = S("[0,1]");
  int done = 0;
  for (int t = 0; t < 80; ++t) {
    std::size_t m = 1 + rng() % 4;
    Rat rmin(1, 2), h(static_cast<long>(1 + rng() % 4), 8);
    std::vector<Rat> vals{Rat(1, 2), Rat(2, 3), Rat(3, 4), Rat(1)};
    auto A = oracle::random_space(rng, m, vals);
    if (!A) continue;
    auto g = gamma(r, m, rmin, h);
    ASSERT_TRUE(valid_chain(r, g, rmin, h));
    // B: A perturbed by less than gamma, kept metric by shrinking towards A.
    std::vector<Rat> up = A->upper();
    for (auto& v : up) v = v - g.gamma() / Rat(2 + static_cast<long>(rng() % 3));
    auto B = FiniteMetricSpace::from_upper_unchecked(m, up);
    if (!oracle::metric(B) || !oracle::dist_in(B, r)) continue;
    bool below = true;
    for (const auto& v : up) below = below && v >= rmin;
    if (!below) continue;
    auto j = h_join(*A, B, h, rmin, r);
    EXPECT_TRUE(validate_join(*A, B, j.P, h, r));
    EXPECT_TRUE(oracle::metric(j.P));
    ++done;
  }
  EXPECT_GT(done, 20);
}

TEST(HatMap, EquilateralTriangle) {
  auto [plan, B] = hat_map(tri(Rat(1), Rat(1), Rat(1)), S("[0,1]"), Rat(1, 10));
  EXPECT_EQ(plan.delta, XRat(Rat(1, 3)));
  EXPECT_EQ(plan.K, std::vector<Rat>{Rat(1)});
  EXPECT_TRUE(plan.E.empty());
  EXPECT_EQ(plan.hat.at(Rat(1)), Rat(10, 11));
  EXPECT_TRUE(oracle::metric(B));
}

TEST(HatMap, DegenerateTriangle) {
  auto [plan, B] = hat_map(tri(Rat(1), Rat(1), Rat(2)), S("[0,2]"), Rat(1, 10));
  EXPECT_EQ(plan.delta, XRat(Rat(1, 3)));
  EXPECT_EQ(plan.E, std::vector<Rat>{Rat(1)});
  EXPECT_EQ(plan.K, std::vector<Rat>{Rat(2)});
  EXPECT_EQ(plan.hat.at(Rat(1)), Rat(12, 11));
  EXPECT_EQ(plan.hat.at(Rat(2)), Rat(67, 34));
  EXPECT_TRUE(oracle::metric(B));
}

TEST(HatMap, RandomSpacesKeepClaim) {
  std::mt19937_64 rng(13);
  auto r = S("[0,1]");
  Rat eps(1, 10);
  std::vector<Rat> g;
  for (long n = 1; n <= 8; ++n) g.emplace_back(n, 8);
  int done = 0;
  for (int t = 0; t < 120; ++t) {
    auto A = oracle::random_space(rng, 2 + rng() % 4, g);
    if (!A) continue;
    auto [plan, B] = hat_map(*A, r, eps);
    EXPECT_TRUE(oracle::metric(B));
    for (std::size_t i = 0; i < A->size(); ++i)
      for (std::size_t j = i + 1; j < A->size(); ++j) {
        EXPECT_LT(abs(A->d(i, j) - B.d(i, j)), eps);
        EXPECT_TRUE(r.contains(B.d(i, j)));
      }
    auto ds = dist_set(*A);
    for (const auto& x : ds)
      for (const auto& y : ds)
        for (const auto& z : ds)
          if (oracle::tri(x, y, z)) {
            EXPECT_TRUE(oracle::tri(plan.hat.at(x), plan.hat.at(y), plan.hat.at(z)));
          }
    ++done;
  }
  EXPECT_GT(done, 50);
}

TEST(HatMap, ExplicitSubsetWithoutElementsIsSearchBudget) {
  std::vector<Rat> s{Rat(0), Rat(1, 2)};
  try {
    hat_map(tri(Rat(1), Rat(1), Rat(1)), S("[0,1]"), Rat(1, 10), s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "SearchBudget");
  }
}

TEST(AgeTest, FixtureTriangles) {
  auto r = S("Q[0,1) u {2}");
  auto a = completion_age_test(tri(Rat(2), Rat(1), Rat(1)), r, Rat(1, 4));
  EXPECT_EQ(a.kind, AgeTestResult::Kind::CertifiedImpossible);
  EXPECT_NE(a.certificate.find("triangle"), std::string::npos);
  auto b = completion_age_test(tri(Rat(2), Rat(2), Rat(1)), r, Rat(1, 4));
  ASSERT_EQ(b.kind, AgeTestResult::Kind::Witness);
  EXPECT_TRUE(validate_age_witness(tri(Rat(2), Rat(2), Rat(1)), *b.B, r, Rat(1, 4)));
}

TEST(AgeTest, AgreesWithExhaustiveSearchOverFiniteSets) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 150; ++t) {
    std::vector<Rat> pts{Rat(0)};
    for (std::size_t i = 0, k = 1 + rng() % 4; i < k; ++i) pts.emplace_back(static_cast<long>(1 + rng() % 8), 2);
    auto r = DistanceSet::finite(pts);
    std::vector<Rat> g;
    for (long n = 1; n <= 8; ++n) g.emplace_back(n, 2);
    auto A = oracle::random_space(rng, 3 + rng() % 2, g);
    if (!A) continue;
    Rat eps(static_cast<long>(1 + rng() % 3), 4);
    auto res = completion_age_test(*A, r, eps);
    bool want = oracle::age_member_finite(*A, *r.finite_points(), eps);
    ASSERT_NE(res.kind, AgeTestResult::Kind::Unknown);
    EXPECT_EQ(res.kind == AgeTestResult::Kind::Witness, want) << space_to_string(*A) << r.str();
    if (res.B) {
      EXPECT_TRUE(validate_age_witness(*A, *res.B, r, eps));
    }
  }
}

TEST(Classify, TableAndReportLines) {
  struct Row {
    const char* set;
    Admissibility want;
  };
  for (const Row& row : std::vector<Row>{{"[0,1]", Admissibility::UrysohnAdmissible},
                                         {"[0,inf)", Admissibility::UrysohnAdmissible},
                                         {"{0,1,2,3}", Admissibility::UrysohnAdmissible},
                                         {"Q[0,1]", Admissibility::CountableUniversalOnly},
                                         {"[0,1] u {2}", Admissibility::Inadmissible},
                                         {"[0,1] u [3,4] u [8,inf)", Admissibility::Inadmissible},
                                         {"{0} u [1,2]", Admissibility::Inadmissible},
                                         {"sumclosed(1;inf)", Admissibility::UrysohnAdmissible}}) {
    auto c = classify(S(row.set));
    EXPECT_EQ(c.verdict, row.want) << row.set;
    EXPECT_FALSE(c.conditional);
    auto lines = c.lines();
    EXPECT_EQ(lines.front().rfind("verdict=", 0), 0u);
    int keyed = 0;
    for (const auto& l : lines)
      for (const char* k : {"fourvalues=", "closed=", "countable=", "zero_limit="})
        if (l.rfind(k, 0) == 0 && l.find("because=") != std::string::npos) ++keyed;
    EXPECT_EQ(keyed, 4) << row.set;
  }
}

TEST(Classify, CaseSplit) {
  using A = Admissibility;
  EXPECT_EQ(admissibility(false, true, true, true), A::Inadmissible);
  EXPECT_EQ(admissibility(true, true, false, true), A::UrysohnAdmissible);
  EXPECT_EQ(admissibility(true, false, true, true), A::CountableUniversalOnly);
  EXPECT_EQ(admissibility(true, false, false, true), A::Inadmissible);
  EXPECT_EQ(admissibility(true, true, true, false), A::UrysohnAdmissible);
  EXPECT_EQ(admissibility(true, true, false, false), A::Inadmissible);
}
