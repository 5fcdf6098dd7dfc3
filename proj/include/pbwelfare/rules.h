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

#ifndef PBWELFARE_RULES_H_
#define PBWELFARE_RULES_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pbwelfare/instance.h"
#include "pbwelfare/rational.h"
#include "pbwelfare/satisfaction.h"

namespace pbwelfare {

// A feasible set of projects. `selected` holds project indices in the order
// the rule picked them.
struct Outcome {
  std::vector<int> selected;
  Rational total_cost = 0;

  bool Contains(int project) const;
  std::vector<std::string> Ids(const Instance& instance) const;
  // Ids sorted by ascending natural id.
  std::vector<std::string> SortedIds(const Instance& instance) const;
};

// Builds an outcome from project ids; throws ValidationError on unknown ids,
// duplicates or an over-budget selection.
Outcome OutcomeFromIds(const Instance& instance,
                       const std::vector<std::string>& ids);

// Smallest rho >= 0 with sum_i min(budget_i, rho * mu) = cost over the given
// supporter budgets, or nullopt (infinity) if the supporters cannot afford the
// project. Solved exactly, segment by segment, over the budgets in ascending
// order.
std::optional<Rational> ComputeRho(const Rational& cost, const Rational& mu,
                                   std::vector<Rational> supporter_budgets);

// Same, reading the supporters' remaining budgets from a per-voter vector.
std::optional<Rational> ComputeRho(const Instance& instance,
                                   const SatisfactionFunction& fn, int project,
                                   const std::vector<Rational>& voter_budgets);

// Greedy by value ("bang per buck"): repeatedly takes the affordable
// unselected project with the largest |N_p| mu(p) / c(p), ties by ascending
// id. When `start` is given, continues from that outcome with the leftover
// budget (used as the completion step of MES).
Outcome RunGreedy(const Instance& instance, const SatisfactionFunction& fn,
                  const Outcome* start = nullptr);

struct MesRound {
  int project = -1;
  Rational rho;
  // rho of every project at the start of the round; nullopt = infinite or
  // already selected.
  std::vector<std::optional<Rational>> candidate_rho;
  // (voter index, amount) for every supporter of `project`.
  std::vector<std::pair<int, Rational>> payments;
  std::vector<Rational> budgets_after;
  // For each affordable unselected project at the start of the round, the
  // supporters whose remaining budget is below the equal split c(p)/|N_p|.
  // Projects without such voters are omitted.
  std::vector<std::pair<int, std::vector<int>>> budget_limited;
};

struct MesTrace {
  Rational initial_share;
  std::vector<MesRound> rounds;
  // Number of leading entries of the outcome chosen by MES itself; the rest
  // were added by the greedy completion.
  int completion_start_index = 0;
};

struct MesResult {
  Outcome outcome;
  MesTrace trace;
};

// Method of Equal Shares: every voter starts with budget/n; each round buys
// the project with the smallest finite rho (ties by ascending id), charging
// supporter i min(b_i, rho * mu(p)). Stops once every rho is infinite.
MesResult RunMes(const Instance& instance, const SatisfactionFunction& fn);

// MES followed by RunGreedy on the remaining projects and budget.
MesResult RunMesCompleted(const Instance& instance,
                          const SatisfactionFunction& fn);

// Welfare of the part of the greedy outcome bought with the first
// budget - c_max units of money, counting the project that straddles the mark
// fractionally at its full value density. Zero when c_max == budget.
Rational TruncatedGreedyWelfare(const Instance& instance,
                                const SatisfactionFunction& fn);

struct DivergenceStage {
  int stage = 0;  // 1-based
  int project = -1;
  Rational alpha;  // |N_p| * budget / (n * c(p))
};

// Replays the greedy order against MES budgets (equal splits while nobody is
// budget-limited) and returns the first stage whose greedy pick has a
// budget-limited supporter. nullopt when the two rules never diverge.
std::optional<DivergenceStage> FirstDivergenceStage(
    const Instance& instance, const SatisfactionFunction& fn);

// Line-oriented trace: one "project;rho;voter:amount,..." line per MES round,
// bracketed by "# initial_share=" and "# completion=" lines.
std::string SerializeTrace(const Instance& instance, const MesResult& result);

}  // namespace pbwelfare

#endif  // PBWELFARE_RULES_H_
