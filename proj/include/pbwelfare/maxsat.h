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

#ifndef PBWELFARE_MAXSAT_H_
#define PBWELFARE_MAXSAT_H_

#include <cstdint>

#include "pbwelfare/instance.h"
#include "pbwelfare/rational.h"
#include "pbwelfare/rules.h"
#include "pbwelfare/satisfaction.h"

namespace pbwelfare {

// Welfare maximization is a 0/1 knapsack with weights c(p) and profits
// |N_p| * mu(p). Costs and budget are scaled to integers by the LCM of their
// denominators; small scaled budgets are solved by dynamic programming over
// the budget, everything else by branch-and-bound with the fractional
// knapsack bound.
struct MaxSatOptions {
  Integer dp_budget_cap = 10000000;
  // Upper limit on the DP decision table, in bits (projects x budget).
  std::uint64_t dp_table_bit_cap = std::uint64_t{1} << 31;
  bool allow_branch_and_bound = true;
};

enum class MaxSatMethod { kDynamicProgramming, kBranchAndBound, kBruteForce };

struct MaxSatResult {
  // Optimal projects in ascending id order. Among all optimal sets this is
  // the one whose ascending id list is lexicographically smallest.
  Outcome outcome;
  Rational welfare;
  MaxSatMethod method = MaxSatMethod::kDynamicProgramming;
};

// Throws ValidationError when the DP does not apply and branch-and-bound is
// disabled.
MaxSatResult RunMaxSat(const Instance& instance, const SatisfactionFunction& fn,
                       const MaxSatOptions& options = {});

inline constexpr int kBruteForceProjectLimit = 20;

// Exhaustive enumeration of all project subsets, same tie-break. Test oracle;
// throws ValidationError above kBruteForceProjectLimit projects.
MaxSatResult BruteForceMaxSat(const Instance& instance,
                              const SatisfactionFunction& fn);

}  // namespace pbwelfare

#endif  // PBWELFARE_MAXSAT_H_
