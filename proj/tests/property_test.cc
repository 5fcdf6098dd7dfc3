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

// Randomized invariants over hand-rolled instance and function generators.

#include <algorithm>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "pbwelfare/axioms.h"
#include "pbwelfare/generators.h"
#include "pbwelfare/guarantees.h"
#include "pbwelfare/maxsat.h"
#include "pbwelfare/pabulib_io.h"
#include "pbwelfare/rules.h"
#include "pbwelfare/satisfaction.h"

namespace pbwelfare {
namespace {

constexpr std::uint64_t kSeeds = 300;

std::vector<Rational> DistinctCosts(const Instance& instance) {
  std::set<Rational> costs;
  for (int p = 0; p < instance.num_projects(); ++p) {
    costs.insert(instance.cost(p));
  }
  return {costs.begin(), costs.end()};
}

Rational RandomFraction(std::mt19937_64& engine, int denominator) {
  std::uniform_int_distribution<int> pick(1, denominator);
  Rational value(pick(engine), denominator);
  value.canonicalize();
  return value;
}

// mu grows with cost by a factor between 1 and the cost ratio, so both
// satisfaction and satisfaction/cost move the right way.
SatisfactionFunction RandomDnsTable(const Instance& instance,
                                    std::mt19937_64& engine) {
  const std::vector<Rational> costs = DistinctCosts(instance);
  std::map<Rational, Rational> table;
  Rational mu = costs[0] * RandomFraction(engine, 8);
  table[costs[0]] = mu;
  for (size_t j = 1; j < costs.size(); ++j) {
    const Rational ratio = costs[j] / costs[j - 1];
    mu *= 1 + (ratio - 1) * (RandomFraction(engine, 9) - Rational(1, 9));
    table[costs[j]] = mu;
  }
  return SatisfactionFunction::Table(std::move(table));
}

SatisfactionFunction RandomTable(const Instance& instance,
                                 std::mt19937_64& engine) {
  std::map<Rational, Rational> table;
  for (const Rational& cost : DistinctCosts(instance)) {
    table[cost] = RandomFraction(engine, 20) * 10;
  }
  return SatisfactionFunction::Table(std::move(table));
}

std::vector<SatisfactionFunction> DnsFunctions(const Instance& instance,
                                               std::uint64_t seed) {
  std::mt19937_64 engine(seed * 7919 + 1);
  return {SatisfactionFunction::Cost(), SatisfactionFunction::Cardinality(),
          SqrtCostFor(instance), RandomDnsTable(instance, engine)};
}

TEST(DnsPropertyTest, GeneratedFunctionsAreDnsAndChainHolds) {
  for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
    const Instance instance = GenerateRandomInstance(seed);
    for (const SatisfactionFunction& fn : DnsFunctions(instance, seed)) {
      ASSERT_TRUE(CheckDns(fn, instance).is_dns) << seed << " " << fn.Name();
      const InstanceParams params = ComputeInstanceParams(instance, fn);
      for (int p = 0; p < instance.num_projects(); ++p) {
        const Rational density = SatValue(fn, instance, p) / instance.cost(p);
        EXPECT_LE(density, params.mu_min / params.c_min) << seed;
        EXPECT_GE(density, params.mu_max / params.c_max) << seed;
      }
    }
  }
}

TEST(WelfarePropertyTest, AdditiveOverDisjointSets) {
  std::mt19937_64 engine(11);
  for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
    const Instance instance = GenerateRandomInstance(seed);
    const SatisfactionFunction fn = RandomTable(instance, engine);
    std::vector<int> left;
    std::vector<int> right;
    std::vector<int> both;
    for (int p = 0; p < instance.num_projects(); ++p) {
      (engine() & 1U ? left : right).push_back(p);
      both.push_back(p);
    }
    EXPECT_EQ(UtilitarianWelfare(fn, instance, both),
              UtilitarianWelfare(fn, instance, left) +
                  UtilitarianWelfare(fn, instance, right));
    Rational by_voters = 0;
    for (int voter = 0; voter < instance.voter_count(); ++voter) {
      by_voters += VoterSatisfaction(fn, instance, voter, both);
    }
    EXPECT_EQ(by_voters, UtilitarianWelfare(fn, instance, both));
  }
}

TEST(WelfarePropertyTest, CostFunctionValueIsSupportCount) {
  for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
    const Instance instance = GenerateRandomInstance(seed);
    for (int p = 0; p < instance.num_projects(); ++p) {
      EXPECT_EQ(ProjectValue(SatisfactionFunction::Cost(), instance, p),
                Rational(instance.support_size(p)));
    }
  }
}

TEST(MesPropertyTest, PaymentsAndBudgets) {
  for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
    const Instance instance = GenerateRandomInstance(seed);
    const Rational share = instance.budget() / instance.voter_count();
    for (const SatisfactionFunction& fn : DnsFunctions(instance, seed)) {
      const MesResult result = RunMes(instance, fn);
      std::vector<Rational> paid(instance.voter_count(), 0);
      for (const MesRound& round : result.trace.rounds) {
        const Rational mu = SatValue(fn, instance, round.project);
        Rational total = 0;
        for (const auto& [voter, amount] : round.payments) {
          EXPECT_TRUE(instance.Approves(voter, round.project));
          // Each supporter pays min(remaining, rho * mu).
          EXPECT_EQ(amount, std::min(Rational(share - paid[voter]),
                                     Rational(round.rho * mu)));
          paid[voter] += amount;
          total += amount;
        }
        EXPECT_EQ(total, instance.cost(round.project)) << seed;
        // The chosen rho is the smallest finite one, ties by ascending id.
        for (int p = 0; p < instance.num_projects(); ++p) {
          const auto& rho = round.candidate_rho[p];
          if (!rho) continue;
          EXPECT_GE(*rho, round.rho);
          if (*rho == round.rho) {
            EXPECT_GE(instance.rank(p), instance.rank(round.project));
          }
        }
      }
      for (int voter = 0; voter < instance.voter_count(); ++voter) {
        EXPECT_LE(paid[voter], share);
      }
    }
  }
}

TEST(MesPropertyTest, RhoIsMinimal) {
  std::mt19937_64 engine(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const Rational cost = RandomFraction(engine, 7) * 20;
    const Rational mu = RandomFraction(engine, 5);
    std::vector<Rational> budgets;
    const int k = 1 + static_cast<int>(engine() % 6);
    for (int i = 0; i < k; ++i)
      budgets.push_back(RandomFraction(engine, 6) * 8);
    const std::optional<Rational> rho = ComputeRho(cost, mu, budgets);
    Rational capacity = 0;
    for (const Rational& b : budgets) capacity += b;
    ASSERT_EQ(rho.has_value(), capacity >= cost);
    if (!rho) continue;
    auto pays = [&](const Rational& r) {
      Rational sum = 0;
      for (const Rational& b : budgets) sum += std::min(b, Rational(r * mu));
      return sum;
    };
    EXPECT_EQ(pays(*rho), cost);
    const Rational smaller = *rho * Rational(999999, 1000000);
    EXPECT_LT(pays(smaller), cost);
  }
}

TEST(MesPropertyTest, CompletionIsExhaustive) {
  for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
    const Instance instance = GenerateRandomInstance(seed);
    for (const SatisfactionFunction& fn : DnsFunctions(instance, seed)) {
      for (const Outcome& outcome :
           {RunMesCompleted(instance, fn).outcome, RunGreedy(instance, fn)}) {
        EXPECT_LE(outcome.total_cost, instance.budget());
        const Rational left = instance.budget() - outcome.total_cost;
        for (int p = 0; p < instance.num_projects(); ++p) {
          if (outcome.Contains(p) || ProjectValue(fn, instance, p) == 0) {
            continue;
          }
          EXPECT_GT(instance.cost(p), left) << seed;
        }
      }
    }
  }
}

TEST(MesPropertyTest, AgreesWithGreedyBeforeDivergence) {
  for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
    const Instance instance = GenerateRandomInstance(seed);
    for (const SatisfactionFunction& fn : DnsFunctions(instance, seed)) {
      const Outcome greedy = RunGreedy(instance, fn);
      const MesResult mes = RunMes(instance, fn);
      const auto divergence = FirstDivergenceStage(instance, fn);
      const size_t agreed =
          divergence ? static_cast<size_t>(divergence->stage - 1)
                     : greedy.selected.size();
      ASSERT_LE(agreed, mes.trace.rounds.size()) << seed;
      ASSERT_LE(agreed, greedy.selected.size()) << seed;
      for (size_t j = 0; j < agreed; ++j) {
        EXPECT_EQ(mes.trace.rounds[j].project, greedy.selected[j]) << seed;
      }
      if (!divergence) {
        EXPECT_EQ(mes.outcome.SortedIds(instance),
                  greedy.SortedIds(instance))
            << seed;
      }
    }
  }
}

TEST(MesPropertyTest, BoughtProjectsHaveMinimumValue) {
  for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
    const Instance instance = GenerateRandomInstance(seed);
    std::mt19937_64 engine(seed);
    std::vector<SatisfactionFunction> fns = DnsFunctions(instance, seed);
    fns.push_back(RandomTable(instance, engine));
    for (const SatisfactionFunction& fn : fns) {
      const Rational threshold = instance.voter_count() *
                                 ComputeInstanceParams(instance, fn).mu_min /
                                 instance.budget();
      for (const MesRound& round : RunMes(instance, fn).trace.rounds) {
        EXPECT_GE(ProjectValue(fn, instance, round.project), threshold)
            << seed;
      }
    }
  }
}

TEST(MesPropertyTest, CompletedOutcomeSatisfiesEjr1) {
  for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
    const Instance instance = GenerateRandomInstance(seed);
    std::mt19937_64 engine(seed);
    std::vector<SatisfactionFunction> fns = DnsFunctions(instance, seed);
    fns.push_back(RandomTable(instance, engine));
    for (const SatisfactionFunction& fn : fns) {
      EXPECT_TRUE(
          CheckEjr1(instance, fn, RunMes(instance, fn).outcome).satisfied)
          << seed << " " << fn.Name();
      EXPECT_TRUE(
          CheckEjr1(instance, fn, RunMesCompleted(instance, fn).outcome)
              .satisfied)
          << seed << " " << fn.Name();
    }
  }
}

TEST(GuaranteePropertyTest, RulesMeetTheirBounds) {
  for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
    const Instance instance = GenerateRandomInstance(seed);
    const GuaranteeReport bounds = ComputeGuaranteeBounds(instance);
    std::mt19937_64 engine(seed);
    for (const SatisfactionFunction& fn : DnsFunctions(instance, seed)) {
      const MaxSatResult optimum = RunMaxSat(instance, fn);
      const Rational greedy = WelfareRatio(
          UtilitarianWelfare(fn, instance, RunGreedy(instance, fn).selected),
          optimum.welfare);
      const Rational mes = WelfareRatio(
          UtilitarianWelfare(fn, instance,
                             RunMesCompleted(instance, fn).outcome.selected),
          optimum.welfare);
      EXPECT_GE(greedy, bounds.greedy_bound) << seed;
      EXPECT_TRUE(bounds.mes_bound.AtMost(mes)) << seed;
      const ComparativeReport comparison = CompareMesWithGreedy(instance, fn);
      EXPECT_TRUE(comparison.bound_holds) << seed;
      EXPECT_TRUE(comparison.truncated_bound_holds) << seed;
    }
    // Greedy's guarantee does not need DNS.
    const SatisfactionFunction table = RandomTable(instance, engine);
    EXPECT_GE(UtilitarianRatio(instance, table, RunGreedy(instance, table)),
              bounds.greedy_bound)
        << seed;
  }
}

TEST(GuaranteePropertyTest, MismatchedGreedyMeetsBound) {
  for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
    const Instance instance = GenerateRandomInstance(seed);
    const GuaranteeReport bounds = ComputeGuaranteeBounds(instance);
    const std::vector<SatisfactionFunction> fns = DnsFunctions(instance, seed);
    for (const SatisfactionFunction& actual : fns) {
      for (const SatisfactionFunction& rule : fns) {
        EXPECT_GE(MismatchedGreedyRatio(instance, actual, rule),
                  bounds.mismatch_bound)
            << seed << " " << actual.Name() << " " << rule.Name();
      }
    }
  }
}

TEST(MaxSatPropertyTest, OptimumDominatesRules) {
  for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
    const Instance instance = GenerateRandomInstance(seed);
    for (const SatisfactionFunction& fn : DnsFunctions(instance, seed)) {
      const MaxSatResult optimum = RunMaxSat(instance, fn);
      EXPECT_LE(optimum.outcome.total_cost, instance.budget());
      EXPECT_EQ(optimum.welfare,
                UtilitarianWelfare(fn, instance, optimum.outcome.selected));
      EXPECT_EQ(optimum.welfare, BruteForceMaxSat(instance, fn).welfare);
    }
  }
}

TEST(NativePropertyTest, RoundTripsRandomInstances) {
  RandomInstanceConfig config;
  config.cost_denominator_bound = 9;
  for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
    const Instance instance = GenerateRandomInstance(seed, config);
    const std::string text = EmitNative(instance);
    EXPECT_EQ(EmitNative(ParseNative(text)), text) << seed;
  }
}

}  // namespace
}  // namespace pbwelfare
