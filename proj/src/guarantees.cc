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

#include "pbwelfare/guarantees.h"

#include <algorithm>
#include <utility>

namespace pbwelfare {

namespace {

Rational ClampZero(const Rational& value) {
  return sgn(value) < 0 ? Rational(0) : value;
}

}  // namespace

SurdBound::SurdBound(Rational radicand, Rational offset, Rational scale)
    : radicand_(std::move(radicand)),
      offset_(std::move(offset)),
      scale_(std::move(scale)) {
  if (sgn(radicand_) < 0) throw ValidationError("negative radicand");
  if (sgn(scale_) <= 0) throw ValidationError("scale must be positive");
}

std::optional<Rational> SurdBound::ExactValue() const {
  Rational root;
  if (!IsPerfectSquare(radicand_, &root)) return std::nullopt;
  return Rational(scale_ * (2 * root - offset_));
}

RationalInterval SurdBound::Bracket(const Rational& max_width) const {
  if (auto exact = ExactValue()) return {*exact, *exact};
  // The value's width is 2 * scale times the root's width.
  const RationalInterval root =
      SqrtBracket(radicand_, Rational(max_width / (2 * scale_)));
  return {Rational(scale_ * (2 * root.lo - offset_)),
          Rational(scale_ * (2 * root.hi - offset_))};
}

bool SurdBound::AtMost(const Rational& r) const {
  // scale (2 sqrt(a) - s) <= r  <=>  2 sqrt(a) <= r / scale + s.
  const Rational t = r / scale_ + offset_;
  return sgn(t) >= 0 && 4 * radicand_ <= t * t;
}

bool SurdBound::AtLeast(const Rational& r) const {
  const Rational t = r / scale_ + offset_;
  return sgn(t) <= 0 || 4 * radicand_ >= t * t;
}

SurdBound SurdBound::Scaled(const Rational& factor) const {
  return SurdBound(radicand_, offset_, Rational(scale_ * factor));
}

Rational DefaultBracketWidth() {
  return Rational(Integer(1), Integer("1000000000000"));
}

GuaranteeReport ComputeGuaranteeBounds(const Rational& budget,
                                       const Rational& c_min,
                                       const Rational& c_max) {
  if (!(sgn(c_min) > 0 && c_min <= c_max && c_max <= budget)) {
    throw ValidationError("bounds need 0 < c_min <= c_max <= budget, got b=" +
                          ToString(budget) + " c_min=" + ToString(c_min) +
                          " c_max=" + ToString(c_max));
  }
  GuaranteeReport report{
      .budget = budget,
      .c_min = c_min,
      .c_max = c_max,
      .k1 = budget / c_max,
      .k2 = budget / c_min,
      .greedy_bound = (budget - c_max) / budget,
      .mes_bound = SurdBound(Rational(c_min / budget),
                             Rational((c_min + c_max) / budget)),
  };
  report.mes_interval = report.mes_bound.Bracket(DefaultBracketWidth());
  report.mismatch_bound = report.greedy_bound * c_min / c_max;

  // floor(sqrt(k2)) = floor(sqrt(floor(k2))).
  const Integer floor_k2 = Floor(report.k2);
  mpz_sqrt(report.floor_sqrt_k2.get_mpz_t(), floor_k2.get_mpz_t());
  const Rational scaled = report.floor_sqrt_k2 * c_min / c_max;
  report.x = scaled - Floor(scaled);
  report.ejr1_upper_bound = Rational(2) / report.floor_sqrt_k2 -
                            (c_min + report.x * c_max) / budget;

  report.greedy_bound_clamped = ClampZero(report.greedy_bound);
  report.mes_interval_clamped = {ClampZero(report.mes_interval.lo),
                                 ClampZero(report.mes_interval.hi)};
  report.mismatch_bound_clamped = ClampZero(report.mismatch_bound);
  report.ejr1_upper_bound_clamped = ClampZero(report.ejr1_upper_bound);
  return report;
}

GuaranteeReport ComputeGuaranteeBounds(const Instance& instance) {
  const InstanceParams params =
      ComputeInstanceParams(instance, SatisfactionFunction::Cost());
  return ComputeGuaranteeBounds(instance.budget(), params.c_min, params.c_max);
}

Rational WelfareRatio(const Rational& welfare, const Rational& optimum) {
  if (sgn(optimum) == 0) return Rational(1);
  return welfare / optimum;
}

Rational UtilitarianRatio(const Instance& instance,
                          const SatisfactionFunction& fn,
                          const Outcome& outcome,
                          const MaxSatOptions& options) {
  const MaxSatResult optimum = RunMaxSat(instance, fn, options);
  return WelfareRatio(UtilitarianWelfare(fn, instance, outcome.selected),
                      optimum.welfare);
}

ComparativeReport CompareMesWithGreedy(const Instance& instance,
                                       const SatisfactionFunction& fn) {
  RequireDns(fn, instance);
  const GuaranteeReport bounds = ComputeGuaranteeBounds(instance);

  ComparativeReport report;
  const Outcome greedy = RunGreedy(instance, fn);
  const MesResult mes = RunMesCompleted(instance, fn);
  report.greedy_welfare = UtilitarianWelfare(fn, instance, greedy.selected);
  report.mes_welfare = UtilitarianWelfare(fn, instance, mes.outcome.selected);
  report.ratio = WelfareRatio(report.mes_welfare, report.greedy_welfare);
  report.bound_holds = bounds.mes_bound.AtMost(report.ratio);

  if (bounds.c_max < bounds.budget) {
    report.truncated_welfare = TruncatedGreedyWelfare(instance, fn);
    if (sgn(*report.truncated_welfare) > 0) {
      report.truncated_ratio = report.mes_welfare / *report.truncated_welfare;
      const Rational factor = bounds.budget / (bounds.budget - bounds.c_max);
      report.truncated_bound_holds =
          bounds.mes_bound.Scaled(factor).AtMost(*report.truncated_ratio);
    }
  }
  report.divergence = FirstDivergenceStage(instance, fn);
  return report;
}

Rational MismatchedGreedyRatio(const Instance& instance,
                               const SatisfactionFunction& actual,
                               const SatisfactionFunction& rule,
                               const MaxSatOptions& options) {
  const Outcome greedy = RunGreedy(instance, rule);
  return UtilitarianRatio(instance, actual, greedy, options);
}

}  // namespace pbwelfare
