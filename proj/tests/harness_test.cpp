// Copyright 2026 The Choquet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <set>

#include "choquet/harness.hpp"

namespace {

using namespace choquet;

SuiteConfig small(const std::string& name, int trials = 20) {
  SuiteConfig c;
  c.name = name;
  c.trials = trials;
  c.lattice = {1, 4, 0.5};
  c.seed = 7;
  c.threads = 1;
  return c;
}

TEST(Registry, NamesAreSortedAndUnique) {
  const auto names = suite_names();
  EXPECT_TRUE(std::is_sorted(names.begin(), names.end()));
  EXPECT_EQ(std::set<std::string>(names.begin(), names.end()).size(), names.size());
  for (const char* expected : {"adams", "cantor_suite", "frostman", "thm31_first",
                               "verification_ineq", "young_suite"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), expected), names.end()) << expected;
  }
}

TEST(RunSuite, UnknownSuiteThrows) {
  EXPECT_THROW(run_suite(small("no_such_suite")), UnknownSuiteError);
}

TEST(RunSuite, InvalidLatticeThrows) {
  auto c = small("adams");
  c.lattice.d = 1.5;
  EXPECT_THROW(run_suite(c), ConfigError);
}

TEST(RunSuite, CantorNeedsSnappedExponent) {
  auto c = small("cantor_suite");
  c.lattice = {1, 6, 0.4};
  EXPECT_THROW(run_suite(c), ConfigError);
}

TEST(RunSuite, EverySuitePassesOnASmallLattice) {
  for (const auto& name : suite_names()) {
    auto c = small(name, 10);
    const auto r = run_suite(c);
    EXPECT_TRUE(r.pass()) << name << "\n" << to_json(r).dump(2);
    EXPECT_GT(r.trials_run, 0) << name;
    const auto j = to_json(r);
    EXPECT_EQ(j["status"], "pass");
    EXPECT_TRUE(j["counterexample"].is_null());
    EXPECT_EQ(j["suite"], name);
    for (const char* key : {"trials", "L", "seed", "bound", "worst_ratio", "empirical_constant"}) {
      EXPECT_TRUE(j.contains(key)) << name << " lacks " << key;
    }
  }
}

TEST(RunSuite, DeterministicAcrossThreadCounts) {
  for (const char* name : {"thm31_first", "frostman", "maximal_equiv"}) {
    auto c = small(name, 16);
    const auto one = to_json(run_suite(c)).dump();
    EXPECT_EQ(one, to_json(run_suite(c)).dump()) << name;
    c.threads = 4;
    EXPECT_EQ(one, to_json(run_suite(c)).dump()) << name;
  }
}

TEST(RunSuite, SeedChangesTheSample) {
  auto c = small("adams", 10);
  const auto a = run_suite(c);
  c.seed = 8;
  const auto b = run_suite(c);
  EXPECT_NE(a.headline().worst, b.headline().worst);
}

TEST(RunSuite, HeadlineBoundsAreRespected) {
  auto c = small("verification_ineq", 50);
  const auto r = run_suite(c);
  ASSERT_EQ(r.headline().spec.kind, CheckKind::upper_bound);
  EXPECT_LE(r.headline().worst, r.headline().spec.bound + r.headline().spec.tolerance);
  EXPECT_EQ(r.headline().samples, 50U);
}

TEST(CheckSummaryJson, FailureCarriesItsCounterexample) {
  CheckSummary s;
  s.spec = {"toy", CheckKind::upper_bound, 1.0, 1e-9, Extreme::max};
  s.samples = 2;
  s.worst = 3.0;
  s.min = 0.5;
  s.pass = false;
  s.counterexample = Json{{"value", 3.0}};
  const auto j = to_json(s);
  EXPECT_EQ(j["status"], "fail");
  EXPECT_EQ(j["bound"], 1.0);
  EXPECT_EQ(j["empirical_constant"], 3.0);
  EXPECT_EQ(j["counterexample"]["value"], 3.0);

  VerificationReport r;
  r.config = small("toy");
  r.trials_run = 2;
  CheckSummary ok;
  ok.spec = {"other", CheckKind::recorded, 0.0, 0.0, Extreme::min};
  ok.samples = 2;
  ok.worst = 2.0;
  ok.min = 1.0;
  r.checks = {ok, s};
  EXPECT_FALSE(r.pass());
  const auto rj = to_json(r);
  EXPECT_EQ(rj["status"], "fail");
  EXPECT_TRUE(rj["bound"].is_null());
  EXPECT_EQ(rj["empirical_constant"], 1.0);
  EXPECT_EQ(rj["counterexample"]["value"], 3.0);
}

TEST(NumberJson, NonFiniteBecomesString) {
  EXPECT_EQ(number_json(kInfinity), "inf");
  EXPECT_EQ(number_json(-kInfinity), "-inf");
  EXPECT_EQ(number_json(kNotApplicable), "nan");
  EXPECT_EQ(number_json(0.25), 0.25);
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  std::vector<int> hits(97, 0);
  parallel_for(97, 5, [&](int i) { ++hits[i]; });
  for (int h : hits) EXPECT_EQ(h, 1);
  parallel_for(0, 3, [&](int) { FAIL(); });
}

TEST(RandomInstance, DeterministicAndValid) {
  const LatticeConfig cfg{2, 3, 1.0};
  for (const char* name : {"function", "density", "set", "tiling", "sparse_family"}) {
    const auto kind = parse_instance_kind(name);
    const auto a = to_json(random_instance(kind, cfg, 99)).dump();
    EXPECT_EQ(a, to_json(random_instance(kind, cfg, 99)).dump()) << name;
    EXPECT_NE(a, to_json(random_instance(kind, cfg, 100)).dump()) << name;
  }
  const auto tiling = std::get<Tiling>(random_instance(InstanceKind::tiling, cfg, 5));
  EXPECT_TRUE(validate_tiling(cfg, tiling).ok);
  const auto set = std::get<GridFunction>(random_instance(InstanceKind::set, cfg, 5));
  EXPECT_TRUE(set.is_indicator());
  const auto density = std::get<GridFunction>(random_instance(InstanceKind::density, cfg, 5));
  EXPECT_TRUE(density.is_nonnegative());
  EXPECT_THROW(parse_instance_kind("cloud"), ParseError);
}

}  // namespace
