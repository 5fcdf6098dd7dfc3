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

#include "pbwelfare/instance.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <utility>

#include "pbwelfare/satisfaction.h"

namespace pbwelfare {

namespace {

bool IsDigit(char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }

// Compares two digit runs numerically, ignoring leading zeros; returns <0, 0
// or >0.
int CompareDigitRuns(std::string_view a, std::string_view b) {
  while (a.size() > 1 && a.front() == '0') a.remove_prefix(1);
  while (b.size() > 1 && b.front() == '0') b.remove_prefix(1);
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return a.compare(b);
}

}  // namespace

bool ProjectIdLess(std::string_view a, std::string_view b) {
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (IsDigit(a[i]) && IsDigit(b[j])) {
      size_t i_end = i, j_end = j;
      while (i_end < a.size() && IsDigit(a[i_end])) ++i_end;
      while (j_end < b.size() && IsDigit(b[j_end])) ++j_end;
      const int cmp =
          CompareDigitRuns(a.substr(i, i_end - i), b.substr(j, j_end - j));
      if (cmp != 0) return cmp < 0;
      i = i_end;
      j = j_end;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
  // Equal under the natural order ("p01" vs "p1"): fall back to bytes.
  return a < b;
}

bool Instance::Approves(int voter, int project) const {
  const auto& list = approvals_.at(voter);
  return std::binary_search(list.begin(), list.end(), project);
}

std::optional<int> Instance::FindProject(std::string_view id) const {
  auto it = index_of_.find(std::string(id));
  if (it == index_of_.end()) return std::nullopt;
  return it->second;
}

int Instance::ProjectIndex(std::string_view id) const {
  if (auto index = FindProject(id)) return *index;
  throw ValidationError("unknown project id '" + std::string(id) + "'");
}

std::vector<int> Instance::Supporters(std::string_view project_id) const {
  std::vector<int> ids;
  for (int voter : supporters_[ProjectIndex(project_id)]) {
    ids.push_back(voter + 1);
  }
  return ids;
}

Rational Instance::TotalCost(const std::vector<int>& project_indices) const {
  Rational total = 0;
  for (int p : project_indices) total += projects_.at(p).cost;
  return total;
}

struct InstanceBuilder {
  static Instance Build(Rational budget, std::vector<Project> projects,
                        std::vector<std::vector<int>> approvals) {
    Instance instance;
    instance.budget_ = std::move(budget);
    instance.projects_ = std::move(projects);
    instance.approvals_ = std::move(approvals);
    const int m = instance.num_projects();
    instance.supporters_.assign(m, {});
    for (int voter = 0; voter < instance.voter_count(); ++voter) {
      auto& list = instance.approvals_[voter];
      std::sort(list.begin(), list.end());
      for (int p : list) instance.supporters_[p].push_back(voter);
    }
    instance.by_rank_.resize(m);
    std::iota(instance.by_rank_.begin(), instance.by_rank_.end(), 0);
    std::sort(instance.by_rank_.begin(), instance.by_rank_.end(),
              [&](int a, int b) {
                return ProjectIdLess(instance.projects_[a].id,
                                     instance.projects_[b].id);
              });
    instance.rank_.resize(m);
    for (int r = 0; r < m; ++r) instance.rank_[instance.by_rank_[r]] = r;
    for (int p = 0; p < m; ++p) {
      instance.index_of_.emplace(instance.projects_[p].id, p);
    }
    return instance;
  }
};

ValidatedInstance ValidateInstance(RawInstance raw, ValidationMode mode) {
  const bool strict = mode == ValidationMode::kStrict;
  std::vector<std::string> warnings;

  if (sgn(raw.budget) <= 0) {
    throw ValidationError("budget must be positive, got " +
                          ToString(raw.budget));
  }
  if (raw.approvals.empty()) throw ValidationError("instance has zero voters");

  std::set<std::string> seen;
  std::set<std::string> dropped;
  std::vector<Project> kept;
  for (auto& project : raw.projects) {
    if (project.id.empty()) throw ValidationError("empty project id");
    if (!seen.insert(project.id).second) {
      throw ValidationError("duplicate project id '" + project.id + "'");
    }
    if (sgn(project.cost) <= 0) {
      throw ValidationError("non-positive cost for project '" + project.id +
                            "'");
    }
    if (project.cost > raw.budget) {
      if (strict) {
        throw ValidationError("project '" + project.id + "' costs " +
                              ToString(project.cost) + " > budget " +
                              ToString(raw.budget));
      }
      dropped.insert(project.id);
      continue;
    }
    kept.push_back(std::move(project));
  }

  std::map<std::string, int> index;
  for (int p = 0; p < static_cast<int>(kept.size()); ++p) {
    index.emplace(kept[p].id, p);
  }

  // Lenient mode tallies removed references per project id.
  std::map<std::string, int> removed_refs;
  std::vector<std::vector<int>> approvals(raw.approvals.size());
  for (size_t voter = 0; voter < raw.approvals.size(); ++voter) {
    std::set<int> chosen;
    for (const auto& id : raw.approvals[voter]) {
      auto it = index.find(id);
      if (it == index.end()) {
        if (strict) {
          throw ValidationError("voter " + std::to_string(voter + 1) +
                                " approves unknown project '" + id + "'");
        }
        ++removed_refs[id];
        continue;
      }
      if (!chosen.insert(it->second).second) {
        if (strict) {
          throw ValidationError("voter " + std::to_string(voter + 1) +
                                " approves project '" + id + "' twice");
        }
        warnings.push_back("voter " + std::to_string(voter + 1) +
                           ": duplicate approval of project '" + id +
                           "' collapsed");
      }
    }
    approvals[voter].assign(chosen.begin(), chosen.end());
  }

  for (const auto& id : dropped) {
    std::string message = "dropped project '" + id + "': cost exceeds budget";
    if (auto it = removed_refs.find(id); it != removed_refs.end()) {
      message += "; removed from " + std::to_string(it->second) + " ballot(s)";
      removed_refs.erase(it);
    }
    warnings.push_back(std::move(message));
  }
  for (const auto& [id, count] : removed_refs) {
    warnings.push_back("removed " + std::to_string(count) +
                       " approval(s) of unknown project '" + id + "'");
  }

  return {InstanceBuilder::Build(std::move(raw.budget), std::move(kept),
                                 std::move(approvals)),
          std::move(warnings)};
}

Instance MakeInstance(RawInstance raw) {
  return ValidateInstance(std::move(raw), ValidationMode::kStrict).instance;
}

InstanceParams ComputeInstanceParams(const Instance& instance,
                                     const SatisfactionFunction& fn) {
  if (instance.num_projects() == 0) {
    throw ValidationError("instance parameters need at least one project");
  }
  InstanceParams params;
  params.c_min = params.c_max = instance.cost(0);
  params.mu_min = params.mu_max = fn.Value(instance.cost(0));
  for (int p = 1; p < instance.num_projects(); ++p) {
    const Rational& c = instance.cost(p);
    if (c < params.c_min) params.c_min = c;
    if (c > params.c_max) params.c_max = c;
    const Rational mu = fn.Value(c);
    if (mu < params.mu_min) params.mu_min = mu;
    if (mu > params.mu_max) params.mu_max = mu;
  }
  params.k1 = instance.budget() / params.c_max;
  params.k2 = instance.budget() / params.c_min;
  return params;
}

}  // namespace pbwelfare
