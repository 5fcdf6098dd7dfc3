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

#ifndef PBWELFARE_INSTANCE_H_
#define PBWELFARE_INSTANCE_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pbwelfare/rational.h"

namespace pbwelfare {

// Raised for malformed instances, bad parameters and unparseable input.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Project {
  std::string id;
  Rational cost;
};

// Unvalidated instance data as it comes out of a parser or generator.
// Approvals are per voter (voter i+1 is approvals[i]) and name projects by id.
struct RawInstance {
  Rational budget;
  std::vector<Project> projects;
  std::vector<std::vector<std::string>> approvals;
};

enum class ValidationMode {
  kStrict,   // every violation is an error
  kLenient,  // over-budget projects and dangling references are dropped
};

// Natural ordering of project ids: runs of digits compare numerically, so
// "p2" < "p10" and "9" < "12". Used for every tie-break in the library.
bool ProjectIdLess(std::string_view a, std::string_view b);

// A validated participatory budgeting instance. Immutable; projects keep their
// input order and are addressed internally by index. Voters are 1-based in all
// public ids and 0-based as indices.
class Instance {
 public:
  const Rational& budget() const { return budget_; }
  const std::vector<Project>& projects() const { return projects_; }
  int num_projects() const { return static_cast<int>(projects_.size()); }
  int voter_count() const { return static_cast<int>(approvals_.size()); }

  const Project& project(int index) const { return projects_.at(index); }
  const Rational& cost(int index) const { return projects_[index].cost; }

  // Approved project indices of voter `voter` (0-based), ascending.
  const std::vector<int>& approvals(int voter) const {
    return approvals_.at(voter);
  }
  // Supporter voter indices (0-based) of project `index`, ascending.
  const std::vector<int>& supporter_indices(int index) const {
    return supporters_.at(index);
  }
  int support_size(int index) const {
    return static_cast<int>(supporters_[index].size());
  }
  bool Approves(int voter, int project) const;

  std::optional<int> FindProject(std::string_view id) const;
  // Throws ValidationError on unknown id.
  int ProjectIndex(std::string_view id) const;

  // Position of the project in the tie-break order (ascending natural id).
  int rank(int index) const { return rank_[index]; }
  // Project indices sorted by ascending natural id.
  const std::vector<int>& by_rank() const { return by_rank_; }

  // Supporters of a project as 1-based voter ids, ascending.
  std::vector<int> Supporters(std::string_view project_id) const;

  Rational TotalCost(const std::vector<int>& project_indices) const;

 private:
  friend struct InstanceBuilder;
  Instance() = default;

  Rational budget_;
  std::vector<Project> projects_;
  std::vector<std::vector<int>> approvals_;
  std::vector<std::vector<int>> supporters_;
  std::vector<int> rank_;
  std::vector<int> by_rank_;
  std::unordered_map<std::string, int> index_of_;
};

struct ValidatedInstance {
  Instance instance;
  std::vector<std::string> warnings;
};

// Checks every structural invariant and builds the indexed instance.
// Errors (ValidationError): non-positive budget, duplicate project id,
// non-positive cost, zero voters, and in strict mode cost > budget, approvals
// of unknown ids and duplicated approvals. Lenient mode drops the offending
// entities and records one warning per dropped entity.
ValidatedInstance ValidateInstance(
    RawInstance raw, ValidationMode mode = ValidationMode::kStrict);

// Strict validation, returning only the instance.
Instance MakeInstance(RawInstance raw);

class SatisfactionFunction;

// Instance-level parameters consumed by the guarantee formulas.
struct InstanceParams {
  Rational c_min;
  Rational c_max;
  Rational k1;  // budget / c_max
  Rational k2;  // budget / c_min
  Rational mu_min;
  Rational mu_max;
};

InstanceParams ComputeInstanceParams(const Instance& instance,
                                     const SatisfactionFunction& fn);

}  // namespace pbwelfare

#endif  // PBWELFARE_INSTANCE_H_
