// Copyright 2026 The pbwelfare Authors.
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

#include "pbwelfare/maxsat.h"

#include <gtest/gtest.h>

#include "pbwelfare/generators.h"
#include "test_util.h"

namespace pbwelfare {
namespace {

using ::pbwelfare::testing::R;
using ::pbwelfare::testing::RunningExample;

MaxSatOptions BranchAndBoundOnly() {
  MaxSatOptions options;
  options.dp_budget_cap = 0;
  return options;
}

TEST(RunMaxSatTest, RunningExample) {
  const Instance instance = RunningExample();
  for (const MaxSatOptions& options : {MaxSatOptions{}, BranchAndBoundOnly()}) {
    const MaxSatResult result =
        RunMaxSat(instance, SatisfactionFunction::Cost(), options);
    EXPECT_EQ(result.outcome.SortedIds(instance),
              (std::vector<std::string>{"p2", "p3"}));
    EXPECT_EQ(result.welfare, Rational(460));
  }
  EXPECT_EQ(RunMaxSat(instance, SatisfactionFunction::Cost()).method,
            MaxSatMethod::kDynamicProgramming);
  EXPECT_EQ(RunMaxSat(instance, SatisfactionFunction::Cost(),
                      BranchAndBoundOnly())
                .method,
            MaxSatMethod::kBranchAndBound);
}

TEST(RunMaxSatTest, EverythingFits) {
  RawInstance raw;
  raw.budget = 10;
  raw.projects = {{"p1", 2}, {"p2", R("5/2")}, {"p3", 5}};
  raw.approvals = {{"p1"}, {"p2", "p3"}};
  const Instance instance = MakeInstance(raw);
  EXPECT_EQ(RunMaxSat(instance, SatisfactionFunction::Cost()).outcome.selected,
            (std::vector<int>{0, 1, 2}));
}

TEST(RunMaxSatTest, Ejr1TightPicksTheBigProjects) {
  const GeneratedConstruction built = Generate(
      {ConstructionKind::kEjr1Tight, {{"b", 100}, {"k1", 4}, {"k2", 25}}});
  const MaxSatResult result = RunMaxSat(built.instance, built.fn);
  EXPECT_EQ(result.outcome.SortedIds(built.instance),
            (std::vector<std::string>{"p1", "p2", "p3", "p4"}));
  EXPECT_EQ(result.welfare, Rational(500));
}

TEST(RunMaxSatTest, TiesGoToLexicographicallySmallestIds) {
  RawInstance raw;
  raw.budget = 4;
  raw.projects = {{"p3", 2}, {"p10", 2}, {"p2", 2}, {"p1", 4}};
  raw.approvals = {{"p3", "p10", "p2"}, {"p1"}};
  const Instance instance = MakeInstance(raw);
  // Every pair of cheap projects and {p1} are worth 4 under cost.
  for (const MaxSatOptions& options : {MaxSatOptions{}, BranchAndBoundOnly()}) {
    const MaxSatResult result =
        RunMaxSat(instance, SatisfactionFunction::Cost(), options);
    EXPECT_EQ(result.outcome.SortedIds(instance),
              (std::vector<std::string>{"p1"}));
  }
  EXPECT_EQ(BruteForceMaxSat(instance, SatisfactionFunction::Cost())
                .outcome.SortedIds(instance),
            (std::vector<std::string>{"p1"}));
}

TEST(RunMaxSatTest, ZeroWelfareOptimumIsEmpty) {
  RawInstance raw;
  raw.budget = 4;
  raw.projects = {{"p1", 2}};
  raw.approvals = {{}};
  const Instance instance = MakeInstance(raw);
  const MaxSatResult result = RunMaxSat(instance, SatisfactionFunction::Cost());
  EXPECT_EQ(result.welfare, Rational(0));
  EXPECT_TRUE(result.outcome.selected.empty());
}

TEST(RunMaxSatTest, LargeScaledBudgetFallsBackToBranchAndBound) {
  RawInstance raw;
  raw.budget = R("1000000");
  raw.projects = {{"p1", R("100000/13")},
                  {"p2", R("250001/17")},
                  {"p3", R("999999/19")},
                  {"p4", R("500000")},
                  {"p5", R("700001/2")}};
  raw.approvals = {{"p1", "p2"}, {"p3", "p4"}, {"p5"}, {"p1", "p5"}};
  const Instance instance = MakeInstance(raw);
  const MaxSatResult result = RunMaxSat(instance, SatisfactionFunction::Cost());
  EXPECT_EQ(result.method, MaxSatMethod::kBranchAndBound);
  EXPECT_EQ(result.welfare,
            BruteForceMaxSat(instance, SatisfactionFunction::Cost()).welfare);

  MaxSatOptions no_fallback;
  no_fallback.allow_branch_and_bound = false;
  EXPECT_THROW(RunMaxSat(instance, SatisfactionFunction::Cost(), no_fallback),
               ValidationError);
}

TEST(BruteForceMaxSatTest, RunningExampleAndSingleProject) {
  const Instance instance = RunningExample();
  EXPECT_EQ(BruteForceMaxSat(instance, SatisfactionFunction::Cost())
                .outcome.SortedIds(instance),
            (std::vector<std::string>{"p2", "p3"}));
  RawInstance raw;
  raw.budget = 5;
  raw.projects = {{"p1", 5}};
  raw.approvals = {{"p1"}};
  EXPECT_EQ(BruteForceMaxSat(MakeInstance(raw), SatisfactionFunction::Cost())
                .outcome.selected,
            (std::vector<int>{0}));
}

TEST(BruteForceMaxSatTest, RejectsTooManyProjects) {
  RawInstance raw;
  raw.budget = 100;
  for (int j = 1; j <= 21; ++j) {
    raw.projects.push_back({"p" + std::to_string(j), 1});
  }
  raw.approvals = {{"p1"}};
  EXPECT_THROW(
      BruteForceMaxSat(MakeInstance(raw), SatisfactionFunction::Cost()),
      ValidationError);
}

TEST(RunMaxSatTest, AgreesWithBruteForceOnSeededInstances) {
  RandomInstanceConfig config;
  config.p_max = 12;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const Instance instance = GenerateRandomInstance(seed, config);
    for (const auto& fn : {SatisfactionFunction::Cost(),
                           SatisfactionFunction::Cardinality(),
                           SatisfactionFunction::SqrtCost()}) {
      const MaxSatResult oracle = BruteForceMaxSat(instance, fn);
      const MaxSatResult dp = RunMaxSat(instance, fn);
      const MaxSatResult bnb = RunMaxSat(instance, fn, BranchAndBoundOnly());
      EXPECT_EQ(dp.welfare, oracle.welfare) << seed;
      EXPECT_EQ(bnb.welfare, oracle.welfare) << seed;
      EXPECT_EQ(dp.outcome.selected, oracle.outcome.selected) << seed;
      EXPECT_EQ(bnb.outcome.selected, oracle.outcome.selected) << seed;
    }
  }
}

}  // namespace
}  // namespace pbwelfare
