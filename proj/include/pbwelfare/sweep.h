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

#ifndef PBWELFARE_SWEEP_H_
#define PBWELFARE_SWEEP_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pbwelfare/generators.h"
#include "pbwelfare/instance.h"
#include "pbwelfare/pabulib_io.h"
#include "pbwelfare/rules.h"
#include "pbwelfare/satisfaction.h"

namespace pbwelfare {

enum class RuleKind { kGreedy, kMes, kMesGreedy, kMaxSat };

// "greedy", "mes", "mes-greedy", "maxsat".
std::string RuleName(RuleKind rule);
RuleKind RuleFromName(const std::string& name);

// Runs one rule. kMesGreedy is MES completed by greedy.
Outcome RunRule(const Instance& instance, const SatisfactionFunction& fn,
                RuleKind rule);

// Reads a .pb (Pabulib) or, for any other extension, a native instance file.
// Pabulib input is always converted leniently; `mode` applies to native input.
ValidatedInstance LoadInstanceFile(const std::string& path,
                                   ValidationMode mode);

struct LabeledFunction {
  std::string label;  // as rendered in the sat_fn column
  SatisfactionFunction fn;
};

// Parses "cost", "card", "sqrt" or "table:<path>".
LabeledFunction LabeledFunctionFromName(const std::string& name);

struct SweepSource {
  enum class Kind { kFile, kConstruction, kRandom };
  Kind kind = Kind::kFile;
  std::string id;  // instance_id column
  std::string path;
  ConstructionSpec construction{ConstructionKind::kRandom, {}};
  std::uint64_t seed = 0;
  RandomInstanceConfig random;
};

SweepSource FileSource(const std::string& path);
SweepSource ConstructionSource(const ConstructionSpec& spec);
SweepSource RandomSource(std::uint64_t seed,
                         const RandomInstanceConfig& config = {});

// Expands "kind:key=value,key=a|b|c,key=lo..hi" into the cartesian product
// of its parameter values, in order of appearance. Throws ValidationError.
std::vector<ConstructionSpec> ExpandConstructionGrid(const std::string& text);

struct SweepConfig {
  std::vector<SweepSource> sources;
  // Satisfaction functions that welfare is measured with. Construction
  // sources use the functions they were built for instead.
  std::vector<LabeledFunction> fns;
  // When set, rules run with this function and welfare is measured with
  // each entry of `fns`.
  std::optional<LabeledFunction> rule_fn;
  std::vector<RuleKind> rules;
  ValidationMode mode = ValidationMode::kStrict;
  bool check_bounds = true;
  bool check_ejr1 = true;
  // Cross-checks MaxSat against brute force on small instances.
  bool check_oracle = false;
  int jobs = 1;
};

// Throws ValidationError on an empty source, function or rule list.
void ValidateSweepConfig(const SweepConfig& config);

// One row per (source, function, rule), in that nesting order, regardless of
// `jobs`. Sources that fail to load or evaluate yield error rows.
std::vector<ReportRecord> RunSweep(const SweepConfig& config);

// Evaluates every rule on one instance; the rows of RunSweep.
std::vector<ReportRecord> EvaluateInstance(
    const std::string& instance_id, const Instance& instance,
    const LabeledFunction& actual, const LabeledFunction& rule_fn,
    const std::vector<RuleKind>& rules, const SweepConfig& config);

}  // namespace pbwelfare

#endif  // PBWELFARE_SWEEP_H_
