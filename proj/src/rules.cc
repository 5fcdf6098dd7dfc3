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

#include "pbwelfare/rules.h"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pbwelfare {

bool Outcome::Contains(int project) const {
  return std::find(selected.begin(), selected.end(), project) !=
         selected.end();
}

std::vector<std::string> Outcome::Ids(const Instance& instance) const {
  std::vector<std::string> ids;
  ids.reserve(selected.size());
  for (int p : selected) ids.push_back(instance.project(p).id);
  return ids;
}

std::vector<std::string> Outcome::SortedIds(const Instance& instance) const {
  std::vector<int> order = selected;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return instance.rank(a) < instance.rank(b);
  });
  std::vector<std::string> ids;
  for (int p : order) ids.push_back(instance.project(p).id);
  return ids;
}

Outcome OutcomeFromIds(const Instance& instance,
                       const std::vector<std::string>& ids) {
  Outcome outcome;
  std::set<int> seen;
  for (const auto& id : ids) {
    const int p = instance.ProjectIndex(id);
    if (!seen.insert(p).second) {
      throw ValidationError("project '" + id + "' listed twice in outcome");
    }
    outcome.selected.push_back(p);
    outcome.total_cost += instance.cost(p);
  }
  if (outcome.total_cost > instance.budget()) {
    throw ValidationError("outcome costs " + ToString(outcome.total_cost) +
                          ", exceeding the budget " +
                          ToString(instance.budget()));
  }
  return outcome;
}

std::optional<Rational> ComputeRho(const Rational& cost, const Rational& mu,
                                   std::vector<Rational> supporter_budgets) {
  if (supporter_budgets.empty()) return std::nullopt;
  Rational total = 0;
  for (const auto& b : supporter_budgets) {
    if (sgn(b) < 0) throw std::invalid_argument("negative voter budget");
    total += b;
  }
  if (total < cost) return std::nullopt;
  std::sort(supporter_budgets.begin(), supporter_budgets.end());
  // With the k poorest supporters paying their whole budget and the others
  // paying rho * mu each: prefix_k + (s - k) * rho * mu = cost. The first k
  // whose solution lies in [b_{k-1}, b_k] (in payment terms) is the answer.
  const size_t s = supporter_budgets.size();
  Rational prefix = 0;
  for (size_t k = 0; k < s; ++k) {
    const Rational payment = (cost - prefix) / Rational(s - k);
    if (payment <= supporter_budgets[k]) return Rational(payment / mu);
    prefix += supporter_budgets[k];
  }
  // Unreachable: total >= cost guarantees a segment solves the equation.
  throw std::logic_error("rho segment search failed");
}

std::optional<Rational> ComputeRho(const Instance& instance,
                                   const SatisfactionFunction& fn, int project,
                                   const std::vector<Rational>& voter_budgets) {
  std::vector<Rational> budgets;
  budgets.reserve(instance.support_size(project));
  for (int voter : instance.supporter_indices(project)) {
    budgets.push_back(voter_budgets.at(voter));
  }
  return ComputeRho(instance.cost(project), SatValue(fn, instance, project),
                    std::move(budgets));
}

namespace {

Outcome GreedyFrom(const Instance& instance, const ProjectMetrics& metrics,
                   Outcome outcome) {
  std::vector<bool> taken(instance.num_projects(), false);
  for (int p : outcome.selected) taken[p] = true;
  std::vector<int> order;
  for (int p = 0; p < instance.num_projects(); ++p) {
    if (!taken[p]) order.push_back(p);
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const int order = cmp(metrics.value[a], metrics.value[b]);
    if (order != 0) return order > 0;
    return instance.rank(a) < instance.rank(b);
  });
  // Affordability only shrinks, so one pass in value order suffices.
  for (int p : order) {
    if (outcome.total_cost + instance.cost(p) <= instance.budget()) {
      outcome.selected.push_back(p);
      outcome.total_cost += instance.cost(p);
    }
  }
  return outcome;
}

}  // namespace

Outcome RunGreedy(const Instance& instance, const SatisfactionFunction& fn,
                  const Outcome* start) {
  const ProjectMetrics metrics = ComputeMetrics(fn, instance);
  return GreedyFrom(instance, metrics, start != nullptr ? *start : Outcome{});
}

MesResult RunMes(const Instance& instance, const SatisfactionFunction& fn) {
  const int n = instance.voter_count();
  const int m = instance.num_projects();
  const ProjectMetrics metrics = ComputeMetrics(fn, instance);

  MesResult result;
  result.trace.initial_share = instance.budget() / n;
  std::vector<Rational> budgets(n, result.trace.initial_share);
  std::vector<bool> selected(m, false);
  // Budgets never grow, so an unaffordable project stays unaffordable.
  std::vector<bool> fundable(m, true);

  while (true) {
    MesRound round;
    round.candidate_rho.assign(m, std::nullopt);
    int best = -1;
    for (int p = 0; p < m; ++p) {
      if (selected[p] || !fundable[p]) continue;
      std::optional<Rational> rho = ComputeRho(instance, fn, p, budgets);
      if (!rho) {
        fundable[p] = false;
        continue;
      }
      if (best < 0 || *rho < *round.candidate_rho[best] ||
          (*rho == *round.candidate_rho[best] &&
           instance.rank(p) < instance.rank(best))) {
        best = p;
      }
      round.candidate_rho[p] = std::move(rho);
    }
    if (best < 0) break;

    for (int p = 0; p < m; ++p) {
      if (selected[p] || instance.support_size(p) == 0) continue;
      if (result.outcome.total_cost + instance.cost(p) > instance.budget()) {
        continue;
      }
      const Rational share = instance.cost(p) / instance.support_size(p);
      std::vector<int> limited;
      for (int voter : instance.supporter_indices(p)) {
        if (share > budgets[voter]) limited.push_back(voter);
      }
      if (!limited.empty()) round.budget_limited.emplace_back(p, limited);
    }

    round.project = best;
    round.rho = *round.candidate_rho[best];
    const Rational price = round.rho * metrics.mu[best];
    Rational paid = 0;
    for (int voter : instance.supporter_indices(best)) {
      Rational payment = std::min(budgets[voter], price);
      budgets[voter] -= payment;
      paid += payment;
      round.payments.emplace_back(voter, std::move(payment));
    }
    if (paid != instance.cost(best)) {
      throw std::logic_error("MES payments do not cover the project cost");
    }
    round.budgets_after = budgets;
    selected[best] = true;
    result.outcome.selected.push_back(best);
    result.outcome.total_cost += instance.cost(best);
    result.trace.rounds.push_back(std::move(round));
  }
  result.trace.completion_start_index =
      static_cast<int>(result.outcome.selected.size());
  return result;
}

MesResult RunMesCompleted(const Instance& instance,
                          const SatisfactionFunction& fn) {
  MesResult result = RunMes(instance, fn);
  result.outcome =
      GreedyFrom(instance, ComputeMetrics(fn, instance), result.outcome);
  return result;
}

Rational TruncatedGreedyWelfare(const Instance& instance,
                                const SatisfactionFunction& fn) {
  if (instance.num_projects() == 0) return Rational(0);
  const ProjectMetrics metrics = ComputeMetrics(fn, instance);
  Rational c_max = instance.cost(0);
  for (const auto& project : instance.projects()) {
    if (project.cost > c_max) c_max = project.cost;
  }
  const Rational mark = instance.budget() - c_max;
  if (sgn(mark) <= 0) return Rational(0);

  const Outcome greedy = GreedyFrom(instance, metrics, Outcome{});
  Rational spent = 0;
  Rational welfare = 0;
  for (int p : greedy.selected) {
    if (spent + instance.cost(p) <= mark) {
      spent += instance.cost(p);
      welfare += metrics.welfare[p];
      continue;
    }
    // The fractional part keeps the project's value density.
    welfare += (mark - spent) * metrics.value[p];
    break;
  }
  return welfare;
}

std::optional<DivergenceStage> FirstDivergenceStage(
    const Instance& instance, const SatisfactionFunction& fn) {
  const int n = instance.voter_count();
  const Outcome greedy = RunGreedy(instance, fn);
  std::vector<Rational> budgets(n, instance.budget() / n);
  for (size_t stage = 0; stage < greedy.selected.size(); ++stage) {
    const int p = greedy.selected[stage];
    const int supporters = instance.support_size(p);
    bool limited = supporters == 0;  // MES can never fund such a project
    Rational share = 0;
    if (!limited) {
      share = instance.cost(p) / supporters;
      for (int voter : instance.supporter_indices(p)) {
        if (share > budgets[voter]) {
          limited = true;
          break;
        }
      }
    }
    if (limited) {
      DivergenceStage result;
      result.stage = static_cast<int>(stage) + 1;
      result.project = p;
      result.alpha = Rational(supporters) * instance.budget() /
                     (Rational(n) * instance.cost(p));
      return result;
    }
    for (int voter : instance.supporter_indices(p)) budgets[voter] -= share;
  }
  return std::nullopt;
}

std::string SerializeTrace(const Instance& instance, const MesResult& result) {
  std::ostringstream out;
  out << "# initial_share=" << ToString(result.trace.initial_share) << "\n";
  for (const auto& round : result.trace.rounds) {
    out << instance.project(round.project).id << ";" << ToString(round.rho)
        << ";";
    for (size_t i = 0; i < round.payments.size(); ++i) {
      if (i > 0) out << ",";
      out << round.payments[i].first + 1 << ":"
          << ToString(round.payments[i].second);
    }
    out << "\n";
  }
  out << "# completion=";
  const auto& selected = result.outcome.selected;
  for (size_t i = result.trace.completion_start_index; i < selected.size();
       ++i) {
    if (i > static_cast<size_t>(result.trace.completion_start_index)) {
      out << ",";
    }
    out << instance.project(selected[i]).id;
  }
  out << "\n";
  return out.str();
}

}  // namespace pbwelfare
