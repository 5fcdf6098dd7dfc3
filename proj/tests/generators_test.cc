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

#include "pbwelfare/generators.h"

#include <nlohmann/json.hpp>

#include <gtest/gtest.h>

#include "pbwelfare/guarantees.h"
#include "pbwelfare/maxsat.h"
#include "pbwelfare/pabulib_io.h"
#include "pbwelfare/sweep.h"
#include "test_util.h"

namespace pbwelfare {
namespace {

using ::pbwelfare::testing::R;

struct Measured {
  std::vector<std::string> selection;
  std::vector<std::string> optimum;
  Rational optimum_welfare;
  Rational ratio;
};

Measured Measure(const GeneratedConstruction& built) {
  const Outcome outcome = RunRule(built.instance, built.rule_fn,
                                  RuleFromName(built.expected.rule));
  const MaxSatResult optimum = RunMaxSat(built.instance, built.fn);
  Measured measured;
  measured.selection = outcome.SortedIds(built.instance);
  measured.optimum = optimum.outcome.SortedIds(built.instance);
  measured.optimum_welfare = optimum.welfare;
  measured.ratio = WelfareRatio(
      UtilitarianWelfare(built.fn, built.instance, outcome.selected),
      optimum.welfare);
  return measured;
}

// Checks every pinned field of the expected record against a fresh run.
void ExpectReproduces(const GeneratedConstruction& built) {
  const ExpectedRecord& expected = built.expected;
  const Measured measured = Measure(built);
  if (!expected.rule_selection.empty()) {
    EXPECT_EQ(measured.selection, expected.rule_selection);
  }
  if (!expected.optimum.empty()) {
    EXPECT_EQ(measured.optimum, expected.optimum);
  }
  if (expected.optimum_welfare) {
    EXPECT_EQ(measured.optimum_welfare, *expected.optimum_welfare);
  }
  if (expected.ratio) EXPECT_EQ(measured.ratio, *expected.ratio);
  if (expected.ratio_upper) EXPECT_LE(measured.ratio, *expected.ratio_upper);
  if (expected.ratio_strict_upper) {
    EXPECT_LT(measured.ratio, *expected.ratio_strict_upper);
  }
}

GeneratedConstruction Build(ConstructionKind kind,
                            std::map<std::string, Rational> params) {
  return Generate({kind, std::move(params)});
}

TEST(ConstructionNameTest, RoundTrips) {
  for (auto kind :
       {ConstructionKind::kBoundedSatWorstCase,
        ConstructionKind::kVanishingSatWorstCase,
        ConstructionKind::kNonDnsWorstCase, ConstructionKind::kGreedyTight,
        ConstructionKind::kEjr1Tight, ConstructionKind::kMismatchTight,
        ConstructionKind::kMultiwinner, ConstructionKind::kRandom}) {
    EXPECT_EQ(ConstructionFromName(ConstructionName(kind)), kind);
  }
  EXPECT_EQ(ConstructionName(ConstructionKind::kEjr1Tight), "ejr1_tight");
  EXPECT_THROW(ConstructionFromName("nope"), ValidationError);
}

TEST(BoundedSatTest, RatioIsOneOverNMinusOne) {
  for (int n : {3, 5, 10, 50}) {
    const GeneratedConstruction built =
        Build(ConstructionKind::kBoundedSatWorstCase, {{"n", n}});
    ExpectReproduces(built);
    EXPECT_EQ(Measure(built).ratio, Rational(1) / (n - 1)) << n;
  }
}

TEST(VanishingSatTest, RatioBelowDelta) {
  for (const char* delta : {"1/10", "1/1000"}) {
    const GeneratedConstruction built = Build(
        ConstructionKind::kVanishingSatWorstCase, {{"delta", R(delta)}});
    ExpectReproduces(built);
  }
  const GeneratedConstruction built =
      Build(ConstructionKind::kVanishingSatWorstCase, {});
  EXPECT_EQ(Measure(built).ratio, R("1/2000"));
}

TEST(NonDnsTest, MesGreedyFallsBelowEps) {
  const GeneratedConstruction built =
      Build(ConstructionKind::kNonDnsWorstCase,
            {{"n", 100}, {"k1", 2}, {"k2", 10}});
  EXPECT_FALSE(CheckDns(built.fn, built.instance).is_dns);
  ExpectReproduces(built);
  // Greedy is unaffected by the failure of DNS here.
  const Outcome greedy = RunGreedy(built.instance, built.fn);
  EXPECT_EQ(UtilitarianRatio(built.instance, built.fn, greedy), R("1"));
}

TEST(GreedyTightTest, ReproducesAndApproachesBoundFromAbove) {
  Rational previous_gap = -1;
  const std::vector<std::pair<int, std::string>> sequence = {
      {100, "1/20"}, {1000, "1/100"}, {10000, "1/1000"}};
  for (const auto& [n, eps] : sequence) {
    const GeneratedConstruction built = Build(
        ConstructionKind::kGreedyTight, {{"x", 10}, {"n", n}, {"eps", R(eps)}});
    ExpectReproduces(built);
    const Rational bound =
        ComputeGuaranteeBounds(built.instance).greedy_bound;
    const Rational gap = *built.expected.ratio - bound;
    EXPECT_GE(gap, 0) << n;
    if (previous_gap >= 0) EXPECT_LT(gap, previous_gap) << n;
    previous_gap = gap;
  }
  EXPECT_LT(previous_gap, R("1/100"));
}

TEST(GreedyTightTest, RejectsOutsideRegime) {
  EXPECT_THROW(Build(ConstructionKind::kGreedyTight,
                     {{"x", 10}, {"n", 20}, {"eps", R("1/10")}}),
               ValidationError);
  EXPECT_THROW(Build(ConstructionKind::kGreedyTight,
                     {{"x", 10}, {"n", 1000}, {"eps", R("1/5")}}),
               ValidationError);
}

TEST(Ejr1TightTest, RatioMeetsUpperBound) {
  for (int k1 = 2; k1 <= 5; ++k1) {
    for (int k2 : {9, 16, 25, 36}) {
      const GeneratedConstruction built =
          Build(ConstructionKind::kEjr1Tight, {{"k1", k1}, {"k2", k2}});
      ExpectReproduces(built);
      EXPECT_EQ(Measure(built).ratio, *built.expected.ratio_upper)
          << k1 << " " << k2;
    }
  }
}

TEST(Ejr1TightTest, FractionalPartTendsToOne) {
  Rational previous = -1;
  for (int a = 3; a <= 12; ++a) {
    const GuaranteeReport report = ComputeGuaranteeBounds(
        R("1000"), Rational(1000) / (a * a), Rational(1000) / (a - 1));
    EXPECT_EQ(report.x, Rational(a - 1, a)) << a;
    EXPECT_GT(report.x, previous);
    previous = report.x;
  }
}

TEST(MismatchTightTest, MeetsAppendixBoundAtNeps) {
  const GeneratedConstruction built =
      Build(ConstructionKind::kMismatchTight, {{"k1", 2}, {"k2", 10}});
  ExpectReproduces(built);
  ASSERT_TRUE(built.expected.ratio_upper.has_value());
  const Rational ratio = Measure(built).ratio;
  const Rational bound = ComputeGuaranteeBounds(built.instance).mismatch_bound;
  EXPECT_GE(ratio, bound);
  // Within 5% of the lower bound.
  EXPECT_LE(ratio, bound * R("105/100"));
}

TEST(MismatchTightTest, ExplicitVoterCount) {
  const GeneratedConstruction built = Build(
      ConstructionKind::kMismatchTight, {{"k1", 2}, {"k2", 10}, {"n", 1000}});
  ExpectReproduces(built);
  EXPECT_EQ(built.instance.voter_count(), 1000);
  EXPECT_THROW(Build(ConstructionKind::kMismatchTight,
                     {{"k1", 2}, {"k2", 10}, {"n", 0}}),
               ValidationError);
}

TEST(MultiwinnerTest, UnanimousRatioIsOne) {
  for (int k : {1, 4, 9}) {
    const GeneratedConstruction built =
        Build(ConstructionKind::kMultiwinner, {{"k", k}});
    ExpectReproduces(built);
  }
  const GeneratedConstruction mixed = Build(
      ConstructionKind::kMultiwinner,
      {{"k", 3}, {"n", 6}, {"unanimous", 0}, {"seed", 4}});
  EXPECT_EQ(mixed.instance.num_projects(), 6);
  EXPECT_EQ(mixed.instance.budget(), R("3"));
}

TEST(GenerateTest, ParameterErrors) {
  EXPECT_THROW(Build(ConstructionKind::kBoundedSatWorstCase, {}),
               ValidationError);
  EXPECT_THROW(Build(ConstructionKind::kBoundedSatWorstCase, {{"n", 2}}),
               ValidationError);
  EXPECT_THROW(
      Build(ConstructionKind::kBoundedSatWorstCase, {{"n", R("7/2")}}),
      ValidationError);
  EXPECT_THROW(Build(ConstructionKind::kEjr1Tight, {{"k1", 5}, {"k2", 4}}),
               ValidationError);
  EXPECT_THROW(Build(ConstructionKind::kNonDnsWorstCase,
                     {{"n", 2}, {"k1", 2}, {"k2", 10}}),
               ValidationError);
  EXPECT_THROW(Build(ConstructionKind::kMultiwinner, {{"k", 0}}),
               ValidationError);
}

TEST(RandomInstanceTest, Deterministic) {
  for (std::uint64_t seed : {1, 2, 99}) {
    EXPECT_EQ(EmitNative(GenerateRandomInstance(seed)),
              EmitNative(GenerateRandomInstance(seed)));
  }
  EXPECT_NE(EmitNative(GenerateRandomInstance(1)),
            EmitNative(GenerateRandomInstance(2)));
}

TEST(RandomInstanceTest, IntegerCostsWithUnitDenominator) {
  RandomInstanceConfig config;
  config.cost_denominator_bound = 1;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Instance instance = GenerateRandomInstance(seed, config);
    for (int p = 0; p < instance.num_projects(); ++p) {
      EXPECT_EQ(instance.cost(p).get_den(), 1);
    }
  }
}

TEST(RandomInstanceTest, ThousandInstancesRespectConfig) {
  RandomInstanceConfig config;
  config.n_min = 2;
  config.n_max = 9;
  config.p_min = 3;
  config.p_max = 7;
  config.cost_denominator_bound = 6;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    const Instance instance = GenerateRandomInstance(seed, config);
    EXPECT_GE(instance.voter_count(), 2);
    EXPECT_LE(instance.voter_count(), 9);
    EXPECT_GE(instance.num_projects(), 3);
    EXPECT_LE(instance.num_projects(), 7);
    EXPECT_EQ(instance.budget().get_den(), 1);
    for (int p = 0; p < instance.num_projects(); ++p) {
      EXPECT_GT(instance.cost(p), 0);
      EXPECT_LE(instance.cost(p), instance.budget());
      EXPECT_LE(instance.cost(p).get_den(), 6);
    }
    // The emitted form validates strictly.
    EXPECT_NO_THROW(ParseNative(EmitNative(instance)));
  }
}

TEST(ExpectedToJsonTest, RendersPinnedFields) {
  const GeneratedConstruction built =
      Build(ConstructionKind::kBoundedSatWorstCase, {{"n", 5}});
  const nlohmann::json json =
      nlohmann::json::parse(ExpectedToJson(built.expected));
  EXPECT_EQ(json["rule"], "mes-greedy");
  EXPECT_EQ(json["rule_selection"], nlohmann::json({"p2"}));
  EXPECT_EQ(json["optimum"], nlohmann::json({"p1"}));
  EXPECT_EQ(json["ratio"], "1/4");
}

}  // namespace
}  // namespace pbwelfare
