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

#ifndef PBWELFARE_SATISFACTION_H_
#define PBWELFARE_SATISFACTION_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pbwelfare/instance.h"
#include "pbwelfare/rational.h"

namespace pbwelfare {

enum class SatisfactionKind { kCost, kCardinality, kSqrtCost, kTable };

// An additive, cost-neutral satisfaction function: the satisfaction a voter
// draws from an approved project depends only on the project's cost.
class SatisfactionFunction {
 public:
  static SatisfactionFunction Cost();
  static SatisfactionFunction Cardinality();
  // sqrt(cost) rounded down to a multiple of 1/precision.
  static SatisfactionFunction SqrtCost(Integer precision = 1000000);
  // Explicit cost -> satisfaction table; every entry must be positive.
  static SatisfactionFunction Table(std::map<Rational, Rational> table);

  SatisfactionKind kind() const { return kind_; }
  const std::map<Rational, Rational>& table() const { return table_; }
  const Integer& sqrt_precision() const { return sqrt_precision_; }

  // Satisfaction of a single project of the given cost. Throws
  // ValidationError for a table function lacking the cost.
  Rational Value(const Rational& cost) const;

  // "cost", "card", "sqrt" or "table".
  std::string Name() const;

  bool operator==(const SatisfactionFunction& other) const;

 private:
  explicit SatisfactionFunction(SatisfactionKind kind) : kind_(kind) {}

  SatisfactionKind kind_;
  std::map<Rational, Rational> table_;
  Integer sqrt_precision_ = 0;
};

// Parses "cost;satisfaction" records, one per line. Blank lines and lines
// starting with '#' are ignored.
SatisfactionFunction ParseSatisfactionTable(std::string_view text);

// Resolves a command-line name: cost | card | sqrt | table:<path>.
SatisfactionFunction SatisfactionFromName(std::string_view name);

Rational SatValue(const SatisfactionFunction& fn, const Instance& instance,
                  int project);

// mu_i(outcome): satisfaction of voter `voter` (0-based) from `outcome`.
Rational VoterSatisfaction(const SatisfactionFunction& fn,
                           const Instance& instance, int voter,
                           const std::vector<int>& outcome);

// uw(outcome) = sum over selected projects of |N_p| * mu(p).
Rational UtilitarianWelfare(const SatisfactionFunction& fn,
                            const Instance& instance,
                            const std::vector<int>& outcome);

// v(p) = |N_p| * mu(p) / c(p).
Rational ProjectValue(const SatisfactionFunction& fn, const Instance& instance,
                      int project);

enum class DnsCondition {
  kMonotoneSatisfaction = 1,  // cheaper never yields more satisfaction
  kDecreasingDensity = 2,     // cheaper never yields less satisfaction/cost
};

struct DnsViolation {
  Rational cost_a;  // cost_a < cost_b
  Rational cost_b;
  DnsCondition condition;
};

struct DnsReport {
  bool is_dns = true;
  std::optional<DnsViolation> violation;
};

// Checks both DNS conditions over every pair of distinct costs occurring in
// the instance. Reports the first violating pair in ascending cost order.
DnsReport CheckDns(const SatisfactionFunction& fn, const Instance& instance);

// Throws ValidationError unless fn is DNS on the instance's costs.
void RequireDns(const SatisfactionFunction& fn, const Instance& instance);

// The rounded sqrt function, rejected with ValidationError if rounding broke
// either DNS condition on this instance's costs.
SatisfactionFunction SqrtCostFor(const Instance& instance,
                                 Integer precision = 1000000);

// Per-project quantities of one (instance, fn) pair, computed once.
struct ProjectMetrics {
  std::vector<Rational> mu;       // satisfaction per supporter
  std::vector<Rational> welfare;  // |N_p| * mu
  std::vector<Rational> value;    // welfare / cost
};

ProjectMetrics ComputeMetrics(const SatisfactionFunction& fn,
                              const Instance& instance);

}  // namespace pbwelfare

#endif  // PBWELFARE_SATISFACTION_H_
