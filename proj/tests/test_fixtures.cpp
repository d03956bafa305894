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

#include <set>

#include "oracles.hpp"

using namespace urysohn;

TEST(Fixtures, CatalogPasses) {
  auto cat = fixture_catalog();
  std::set<std::string> names;
  for (const auto& f : cat) EXPECT_TRUE(names.insert(f.name).second) << f.name;
  for (const auto& r : run_catalog(cat)) EXPECT_TRUE(r.pass) << r.line();
}

TEST(Fixtures, FlippedExpectationFailsAlone) {
  auto cat = fixture_catalog();
  cat[0].expected = "fails";
  auto res = run_catalog(cat);
  EXPECT_FALSE(res[0].pass);
  for (std::size_t i = 1; i < res.size(); ++i) EXPECT_TRUE(res[i].pass) << res[i].line();
}

TEST(Fixtures, EmptyFilterMatchIsVacuous) {
  EXPECT_TRUE(run_catalog(fixture_catalog(), "no-such-fixture").empty());
}
