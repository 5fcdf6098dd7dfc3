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

#include <algorithm>
#include <limits>
#include <optional>
#include <vector>

namespace pbwelfare {

namespace {

// Orders a selection by rank and fills in its cost.
Outcome MakeSortedOutcome(const Instance& instance, std::vector<int> projects) {
  std::sort(projects.begin(), projects.end(), [&](int a, int b) {
    return instance.rank(a) < instance.rank(b);
  });
  Outcome outcome;
  outcome.total_cost = instance.TotalCost(projects);
  outcome.selected = std::move(projects);
  return outcome;
}

// Rank lists compare lexicographically; a proper prefix is smaller.
std::vector<int> RankList(const Instance& instance,
                          const std::vector<int>& projects) {
  std::vector<int> ranks;
  ranks.reserve(projects.size());
  for (int p : projects) ranks.push_back(instance.rank(p));
  std::sort(ranks.begin(), ranks.end());
  return ranks;
}

Integer Lcm(const Integer& a, const Integer& b) {
  Integer result;
  mpz_lcm(result.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return result;
}

struct ScaledKnapsack {
  std::vector<std::int64_t> weights;  // by rank position
  std::vector<std::int64_t> profits;  // by rank position
  std::int64_t capacity = 0;
};

std::optional<ScaledKnapsack> ScaleForDp(const Instance& instance,
                                         const ProjectMetrics& metrics,
                                         const MaxSatOptions& options) {
  const int m = instance.num_projects();
  Integer cost_scale = instance.budget().get_den();
  Integer profit_scale = 1;
  for (int p = 0; p < m; ++p) {
    cost_scale = Lcm(cost_scale, instance.cost(p).get_den());
    profit_scale = Lcm(profit_scale, metrics.welfare[p].get_den());
  }
  const Rational scaled_budget = instance.budget() * cost_scale;
  const Integer capacity = scaled_budget.get_num();
  if (capacity > options.dp_budget_cap) return std::nullopt;
  const Integer bits = (capacity + 1) * m;
  if (bits > Integer(std::to_string(options.dp_table_bit_cap))) {
    return std::nullopt;
  }
  // Sum of all profits must stay well inside int64.
  Integer profit_sum = 0;
  ScaledKnapsack knapsack;
  knapsack.capacity = capacity.get_si();
  for (int r = 0; r < m; ++r) {
    const int p = instance.by_rank()[r];
    const Rational w = instance.cost(p) * cost_scale;
    const Rational v = metrics.welfare[p] * profit_scale;
    profit_sum += v.get_num();
    if (profit_sum > Integer(std::numeric_limits<std::int64_t>::max() / 4)) {
      return std::nullopt;
    }
    knapsack.weights.push_back(w.get_num().get_si());
    knapsack.profits.push_back(v.get_num().get_si());
  }
  return knapsack;
}

// Suffix DP over rank order: after processing position j, best[c] is the best
// profit using positions >= j within capacity c. take[j][c] records that
// position j can start an optimal (and nonzero) completion at capacity c,
// which lets a forward pass recover the lexicographically smallest optimum.
std::vector<int> SolveDp(const Instance& instance, const ScaledKnapsack& ks) {
  const int m = static_cast<int>(ks.weights.size());
  const std::int64_t cap = ks.capacity;
  const size_t words = static_cast<size_t>(cap / 64 + 1);
  std::vector<std::vector<std::uint64_t>> take(
      m, std::vector<std::uint64_t>(words, 0));
  std::vector<std::int64_t> best(static_cast<size_t>(cap) + 1, 0);
  for (int j = m - 1; j >= 0; --j) {
    const std::int64_t w = ks.weights[j];
    const std::int64_t v = ks.profits[j];
    for (std::int64_t c = cap; c >= w; --c) {
      const std::int64_t with = v + best[c - w];
      if (with >= best[c]) {
        best[c] = with;
        if (with > 0) take[j][c / 64] |= std::uint64_t{1} << (c % 64);
      }
    }
  }
  std::vector<int> chosen;
  std::int64_t c = cap;
  for (int j = 0; j < m; ++j) {
    if ((take[j][c / 64] >> (c % 64)) & 1U) {
      chosen.push_back(instance.by_rank()[j]);
      c -= ks.weights[j];
    }
  }
  return chosen;
}

class BranchAndBound {
 public:
  BranchAndBound(const Instance& instance, const ProjectMetrics& metrics)
      : instance_(instance), metrics_(metrics) {
    for (int p = 0; p < instance.num_projects(); ++p) order_.push_back(p);
    std::sort(order_.begin(), order_.end(), [&](int a, int b) {
      const int by_value = cmp(metrics.value[a], metrics.value[b]);
      if (by_value != 0) return by_value > 0;
      return instance.rank(a) < instance.rank(b);
    });
  }

  std::vector<int> Solve() {
    best_welfare_ = -1;
    Search(0, Rational(0), instance_.budget());
    return best_set_;
  }

 private:
  // Fractional knapsack relaxation over order_[depth..].
  Rational UpperBound(size_t depth, const Rational& welfare,
                      Rational room) const {
    Rational bound = welfare;
    for (size_t i = depth; i < order_.size(); ++i) {
      const int p = order_[i];
      if (instance_.cost(p) <= room) {
        room -= instance_.cost(p);
        bound += metrics_.welfare[p];
      } else {
        bound += room * metrics_.value[p];
        break;
      }
    }
    return bound;
  }

  void Search(size_t depth, const Rational& welfare, const Rational& room) {
    if (depth == order_.size()) {
      Consider(welfare);
      return;
    }
    // Ties must stay reachable for the lexicographic tie-break.
    if (sgn(best_welfare_) >= 0 &&
        UpperBound(depth, welfare, room) < best_welfare_) {
      return;
    }
    const int p = order_[depth];
    if (instance_.cost(p) <= room) {
      current_.push_back(p);
      Search(depth + 1, Rational(welfare + metrics_.welfare[p]),
             Rational(room - instance_.cost(p)));
      current_.pop_back();
    }
    Search(depth + 1, welfare, room);
  }

  void Consider(const Rational& welfare) {
    if (welfare > best_welfare_) {
      best_welfare_ = welfare;
      best_set_ = current_;
      best_ranks_ = RankList(instance_, current_);
      return;
    }
    if (welfare == best_welfare_) {
      std::vector<int> ranks = RankList(instance_, current_);
      if (ranks < best_ranks_) {
        best_set_ = current_;
        best_ranks_ = std::move(ranks);
      }
    }
  }

  const Instance& instance_;
  const ProjectMetrics& metrics_;
  std::vector<int> order_;
  std::vector<int> current_;
  Rational best_welfare_;
  std::vector<int> best_set_;
  std::vector<int> best_ranks_;
};

MaxSatResult Finish(const Instance& instance, const ProjectMetrics& metrics,
                    std::vector<int> chosen, MaxSatMethod method) {
  MaxSatResult result;
  result.welfare = 0;
  for (int p : chosen) result.welfare += metrics.welfare[p];
  result.outcome = MakeSortedOutcome(instance, std::move(chosen));
  result.method = method;
  return result;
}

}  // namespace

MaxSatResult RunMaxSat(const Instance& instance, const SatisfactionFunction& fn,
                       const MaxSatOptions& options) {
  const ProjectMetrics metrics = ComputeMetrics(fn, instance);
  if (auto knapsack = ScaleForDp(instance, metrics, options)) {
    return Finish(instance, metrics, SolveDp(instance, *knapsack),
                  MaxSatMethod::kDynamicProgramming);
  }
  if (!options.allow_branch_and_bound) {
    throw ValidationError(
        "scaled budget exceeds the dynamic programming cap and "
        "branch-and-bound is disabled");
  }
  BranchAndBound solver(instance, metrics);
  return Finish(instance, metrics, solver.Solve(),
                MaxSatMethod::kBranchAndBound);
}

MaxSatResult BruteForceMaxSat(const Instance& instance,
                              const SatisfactionFunction& fn) {
  const int m = instance.num_projects();
  if (m > kBruteForceProjectLimit) {
    throw ValidationError("brute force MaxSat supports at most " +
                          std::to_string(kBruteForceProjectLimit) +
                          " projects, got " + std::to_string(m));
  }
  const ProjectMetrics metrics = ComputeMetrics(fn, instance);
  Rational best_welfare = -1;
  std::vector<int> best_set;
  std::vector<int> best_ranks;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
    Rational cost = 0;
    Rational welfare = 0;
    std::vector<int> set;
    for (int p = 0; p < m; ++p) {
      if (mask & (std::uint32_t{1} << p)) {
        cost += instance.cost(p);
        welfare += metrics.welfare[p];
        set.push_back(p);
      }
    }
    if (cost > instance.budget()) continue;
    if (welfare > best_welfare) {
      best_welfare = welfare;
      best_set = set;
      best_ranks = RankList(instance, set);
    } else if (welfare == best_welfare) {
      std::vector<int> ranks = RankList(instance, set);
      if (ranks < best_ranks) {
        best_set = set;
        best_ranks = std::move(ranks);
      }
    }
  }
  return Finish(instance, metrics, std::move(best_set),
                MaxSatMethod::kBruteForce);
}

}  // namespace pbwelfare
