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

#include "pbwelfare/axioms.h"

#include <algorithm>
#include <cstdint>
#include <set>

namespace pbwelfare {

bool IsCohesive(const Instance& instance, const std::vector<int>& projects,
                const std::vector<int>& group) {
  if (projects.empty()) throw ValidationError("T must be nonempty");
  if (group.empty()) throw ValidationError("voter group must be nonempty");
  for (int p : projects) {
    if (p < 0 || p >= instance.num_projects()) {
      throw ValidationError("project index out of range");
    }
  }
  for (int voter : group) {
    if (voter < 0 || voter >= instance.voter_count()) {
      throw ValidationError("unknown voter " + std::to_string(voter + 1));
    }
  }
  for (int voter : group) {
    for (int p : projects) {
      if (!instance.Approves(voter, p)) return false;
    }
  }
  const Rational cost = instance.TotalCost(projects);
  return cost * instance.voter_count() <=
         Rational(static_cast<long>(group.size())) * instance.budget();
}

bool IsCohesiveByIds(const Instance& instance,
                     const std::vector<std::string>& project_ids,
                     const std::vector<int>& voter_ids) {
  std::vector<int> projects;
  for (const auto& id : project_ids) {
    projects.push_back(instance.ProjectIndex(id));
  }
  std::vector<int> group;
  for (int id : voter_ids) group.push_back(id - 1);
  return IsCohesive(instance, projects, group);
}

int LargestBallot(const Instance& instance) {
  int largest = 0;
  for (int voter = 0; voter < instance.voter_count(); ++voter) {
    largest = std::max(largest,
                       static_cast<int>(instance.approvals(voter).size()));
  }
  return largest;
}

bool Ejr1Checkable(const Instance& instance) {
  return LargestBallot(instance) <= kEjr1BallotLimit;
}

Ejr1Result CheckEjr1(const Instance& instance, const SatisfactionFunction& fn,
                     const Outcome& outcome) {
  const int m = instance.num_projects();
  const int n = instance.voter_count();
  if (!Ejr1Checkable(instance)) {
    throw ValidationError("EJR1 check supports ballots of at most " +
                          std::to_string(kEjr1BallotLimit) +
                          " projects, got " +
                          std::to_string(LargestBallot(instance)));
  }
  const ProjectMetrics metrics = ComputeMetrics(fn, instance);
  std::vector<bool> in_outcome(m, false);
  for (int p : outcome.selected) in_outcome[p] = true;

  // Best achievable mu_i(W) + mu(p) over unselected approved p, per voter;
  // nullopt when the voter approves nothing outside the outcome.
  std::vector<std::optional<Rational>> reach(n);
  for (int voter = 0; voter < n; ++voter) {
    Rational current = 0;
    std::optional<Rational> best_extra;
    for (int p : instance.approvals(voter)) {
      if (in_outcome[p]) {
        current += metrics.mu[p];
      } else if (!best_extra || metrics.mu[p] > *best_extra) {
        best_extra = metrics.mu[p];
      }
    }
    if (best_extra) reach[voter] = current + *best_extra;
  }

  // A violated T lies inside the ballot of every voter in its pool, so only
  // subsets of ballots are candidates. Ballots are kept as ascending rank
  // lists so the lexicographic order of T is easy to compare.
  std::set<std::vector<int>> ballots;
  for (int voter = 0; voter < n; ++voter) {
    std::vector<int> ranks;
    for (int p : instance.approvals(voter)) ranks.push_back(instance.rank(p));
    std::sort(ranks.begin(), ranks.end());
    if (!ranks.empty()) ballots.insert(std::move(ranks));
  }

  const std::vector<int>& by_rank = instance.by_rank();
  std::optional<Ejr1Witness> best;
  std::vector<int> best_ranks;
  for (const std::vector<int>& ballot : ballots) {
    const int size = static_cast<int>(ballot.size());
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << size); ++mask) {
      std::vector<int> ranks;
      Rational cost = 0;
      Rational satisfaction = 0;
      bool inside = true;
      for (int k = 0; k < size; ++k) {
        if (!(mask & (std::uint32_t{1} << k))) continue;
        const int p = by_rank[ballot[k]];
        ranks.push_back(ballot[k]);
        cost += instance.cost(p);
        satisfaction += metrics.mu[p];
        if (!in_outcome[p]) inside = false;
      }
      if (inside || cost > instance.budget()) continue;
      if (best && !(ranks < best_ranks)) continue;

      // Common supporters of T without a witness project.
      std::vector<int> pool;
      for (int voter : instance.supporter_indices(by_rank[ranks[0]])) {
        bool approves_all = true;
        for (size_t k = 1; k < ranks.size() && approves_all; ++k) {
          approves_all = instance.Approves(voter, by_rank[ranks[k]]);
        }
        if (!approves_all) continue;
        if (reach[voter] && *reach[voter] > satisfaction) continue;
        pool.push_back(voter);
      }
      const Rational threshold = Rational(n) * cost / instance.budget();
      if (Rational(static_cast<long>(pool.size())) < threshold) continue;

      Ejr1Witness witness;
      for (int r : ranks) witness.projects.push_back(by_rank[r]);
      const Integer needed = Ceil(threshold);
      pool.resize(needed.get_ui());
      witness.group = std::move(pool);
      witness.group_threshold = threshold;
      best = std::move(witness);
      best_ranks = std::move(ranks);
    }
  }

  Ejr1Result result;
  result.satisfied = !best.has_value();
  result.witness = std::move(best);
  return result;
}

}  // namespace pbwelfare
