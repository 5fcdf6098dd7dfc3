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

#ifndef PBWELFARE_GENERATORS_H_
#define PBWELFARE_GENERATORS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pbwelfare/instance.h"
#include "pbwelfare/rational.h"
#include "pbwelfare/satisfaction.h"

namespace pbwelfare {

enum class ConstructionKind {
  kBoundedSatWorstCase,
  kVanishingSatWorstCase,
  kNonDnsWorstCase,
  kGreedyTight,
  kEjr1Tight,
  kMismatchTight,
  kMultiwinner,
  kRandom,
};

// "bounded_sat_worstcase", "ejr1_tight", ...
std::string ConstructionName(ConstructionKind kind);
ConstructionKind ConstructionFromName(const std::string& name);

struct ConstructionSpec {
  ConstructionKind kind;
  std::map<std::string, Rational> params;
};

// What the construction is built to exhibit, for the harness to verify.
struct ExpectedRecord {
  // Rule whose behaviour the construction pins down: "greedy" or
  // "mes-greedy". For mismatched constructions the rule runs with
  // `rule_fn` and welfare is measured with `fn`.
  std::string rule;
  std::vector<std::string> rule_selection;  // ascending ids; empty = unpinned
  std::vector<std::string> optimum;         // ascending ids; empty = unpinned
  std::optional<Rational> optimum_welfare;
  std::optional<Rational> ratio;              // exact expected ratio
  std::optional<Rational> ratio_upper;        // ratio <= this
  std::optional<Rational> ratio_strict_upper; // ratio < this
  std::map<std::string, std::string> notes;
};

struct GeneratedConstruction {
  Instance instance;
  SatisfactionFunction fn;       // welfare is measured with this function
  SatisfactionFunction rule_fn;  // the rule runs with this one
  ExpectedRecord expected;
};

// Builds the named construction. Throws ValidationError when a parameter is
// missing, malformed or outside the construction's constraints.
GeneratedConstruction Generate(const ConstructionSpec& spec);

struct RandomInstanceConfig {
  int n_min = 1;
  int n_max = 12;
  int p_min = 1;
  int p_max = 10;
  int cost_denominator_bound = 4;
  int budget_min = 10;
  int budget_max = 100;
};

// Reproducible random instance: integer budget, costs num/den with
// den <= cost_denominator_bound and 0 < cost <= budget, and every voter
// approving every project independently with probability 1/2.
Instance GenerateRandomInstance(std::uint64_t seed,
                                const RandomInstanceConfig& config = {});

std::string ExpectedToJson(const ExpectedRecord& expected);

}  // namespace pbwelfare

#endif  // PBWELFARE_GENERATORS_H_
