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

#ifndef PBWELFARE_AXIOMS_H_
#define PBWELFARE_AXIOMS_H_

#include <optional>
#include <string>
#include <vector>

#include "pbwelfare/instance.h"
#include "pbwelfare/rational.h"
#include "pbwelfare/rules.h"
#include "pbwelfare/satisfaction.h"

namespace pbwelfare {

// A group N' is T-cohesive when every member approves all of T and
// c(T) <= |N'| / n * budget. Project and voter arguments are indices
// (voters 0-based). Throws ValidationError for out-of-range indices or empty
// arguments.
bool IsCohesive(const Instance& instance, const std::vector<int>& projects,
                const std::vector<int>& group);

// Id-based variant: project ids and 1-based voter ids.
bool IsCohesiveByIds(const Instance& instance,
                     const std::vector<std::string>& project_ids,
                     const std::vector<int>& voter_ids);

struct Ejr1Witness {
  std::vector<int> projects;  // T, ascending rank
  std::vector<int> group;     // N', voter indices ascending
  Rational group_threshold;   // n * c(T) / budget
};

struct Ejr1Result {
  bool satisfied = true;
  std::optional<Ejr1Witness> witness;
};

inline constexpr int kEjr1BallotLimit = 20;

// True when no ballot approves more than kEjr1BallotLimit projects.
bool Ejr1Checkable(const Instance& instance);

// Extended justified representation up to one project. An outcome violates
// the axiom iff for some T with c(T) <= budget and T not inside the outcome,
// at least n * c(T) / budget common supporters of T are "unsatisfied": no
// project p they approve outside the outcome gives mu_i(W) + mu(p) > mu(T).
// Any such set of voters (of the threshold size) is itself T-cohesive, and
// dropping voters can only remove witnesses, so this search is exact. The
// reported witness has the lexicographically smallest T (by ascending ids)
// and the smallest-index voters of that pool.
// Candidate sets T are enumerated inside individual ballots. Throws
// ValidationError when Ejr1Checkable is false.
Ejr1Result CheckEjr1(const Instance& instance, const SatisfactionFunction& fn,
                     const Outcome& outcome);

}  // namespace pbwelfare

#endif  // PBWELFARE_AXIOMS_H_
