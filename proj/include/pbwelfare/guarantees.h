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

#ifndef PBWELFARE_GUARANTEES_H_
#define PBWELFARE_GUARANTEES_H_

#include <optional>

#include "pbwelfare/instance.h"
#include "pbwelfare/maxsat.h"
#include "pbwelfare/rational.h"
#include "pbwelfare/rules.h"
#include "pbwelfare/satisfaction.h"

namespace pbwelfare {

// The real number scale * (2 * sqrt(radicand) - offset), scale > 0. Order
// comparisons against rationals are decided exactly by squaring; the interval
// form is for reporting.
class SurdBound {
 public:
  SurdBound(Rational radicand, Rational offset, Rational scale = 1);

  const Rational& radicand() const { return radicand_; }
  const Rational& offset() const { return offset_; }
  const Rational& scale() const { return scale_; }

  // Exact value when the radicand is a perfect rational square.
  std::optional<Rational> ExactValue() const;

  // An interval containing the value, of width at most max_width.
  RationalInterval Bracket(const Rational& max_width) const;

  // value <= r, decided exactly.
  bool AtMost(const Rational& r) const;
  // value >= r, decided exactly.
  bool AtLeast(const Rational& r) const;

  SurdBound Scaled(const Rational& factor) const;

 private:
  Rational radicand_;
  Rational offset_;
  Rational scale_;
};

// Width used for every reported bracket.
Rational DefaultBracketWidth();  // 10^-12

struct GuaranteeReport {
  Rational budget;
  Rational c_min;
  Rational c_max;
  Rational k1;
  Rational k2;

  // (b - c_max) / b: greedy with the true satisfaction function.
  Rational greedy_bound;
  // 2 sqrt(c_min / b) - (c_min + c_max) / b: MES completed by greedy, for any
  // DNS satisfaction function.
  SurdBound mes_bound;
  RationalInterval mes_interval{};
  // (b - c_max) / b * c_min / c_max: greedy run with a different DNS function.
  Rational mismatch_bound{};
  // 2 / floor(sqrt(b / c_min)) - (c_min + x c_max) / b: no rule satisfying
  // EJR up to one project can beat this on the matching hard instance.
  Rational ejr1_upper_bound{};
  Rational x{};
  Integer floor_sqrt_k2{};

  // Negative raw bounds are vacuous; these are max(0, .).
  Rational greedy_bound_clamped{};
  RationalInterval mes_interval_clamped{};
  Rational mismatch_bound_clamped{};
  Rational ejr1_upper_bound_clamped{};
};

// Throws ValidationError unless 0 < c_min <= c_max <= budget.
GuaranteeReport ComputeGuaranteeBounds(const Rational& budget,
                                       const Rational& c_min,
                                       const Rational& c_max);

GuaranteeReport ComputeGuaranteeBounds(const Instance& instance);

// uw(outcome) / uw(MaxSat); 1 when the optimum welfare is 0.
Rational UtilitarianRatio(const Instance& instance,
                          const SatisfactionFunction& fn,
                          const Outcome& outcome,
                          const MaxSatOptions& options = {});

// Same against a precomputed optimum welfare.
Rational WelfareRatio(const Rational& welfare, const Rational& optimum);

struct ComparativeReport {
  Rational greedy_welfare;
  Rational mes_welfare;  // MES completed by greedy
  Rational ratio;        // mes_welfare / greedy_welfare (1 if both are 0)
  bool bound_holds = false;
  // Against the truncated greedy outcome; absent when c_max == budget.
  std::optional<Rational> truncated_welfare;
  std::optional<Rational> truncated_ratio;  // absent when the truncated
                                            // welfare is 0
  bool truncated_bound_holds = true;
  std::optional<DivergenceStage> divergence;
};

// Compares MES completed by greedy against plain greedy. Throws
// ValidationError when fn is not DNS on the instance.
ComparativeReport CompareMesWithGreedy(const Instance& instance,
                                       const SatisfactionFunction& fn);

// Welfare (under `actual`) of greedy run with `rule`, relative to the
// `actual` optimum.
Rational MismatchedGreedyRatio(const Instance& instance,
                               const SatisfactionFunction& actual,
                               const SatisfactionFunction& rule,
                               const MaxSatOptions& options = {});

}  // namespace pbwelfare

#endif  // PBWELFARE_GUARANTEES_H_
