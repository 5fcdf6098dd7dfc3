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

#include "pbwelfare/satisfaction.h"

#include <fstream>
#include <set>
#include <sstream>
#include <utility>

namespace pbwelfare {

SatisfactionFunction SatisfactionFunction::Cost() {
  return SatisfactionFunction(SatisfactionKind::kCost);
}

SatisfactionFunction SatisfactionFunction::Cardinality() {
  return SatisfactionFunction(SatisfactionKind::kCardinality);
}

SatisfactionFunction SatisfactionFunction::SqrtCost(Integer precision) {
  if (precision <= 0) {
    throw ValidationError("sqrt precision must be a positive integer");
  }
  SatisfactionFunction fn(SatisfactionKind::kSqrtCost);
  fn.sqrt_precision_ = std::move(precision);
  return fn;
}

SatisfactionFunction SatisfactionFunction::Table(
    std::map<Rational, Rational> table) {
  for (const auto& [cost, sat] : table) {
    if (sgn(cost) <= 0) {
      throw ValidationError("satisfaction table has non-positive cost " +
                            ToString(cost));
    }
    if (sgn(sat) <= 0) {
      throw ValidationError("satisfaction table entry for cost " +
                            ToString(cost) + " must be positive");
    }
  }
  SatisfactionFunction fn(SatisfactionKind::kTable);
  fn.table_ = std::move(table);
  return fn;
}

Rational SatisfactionFunction::Value(const Rational& cost) const {
  switch (kind_) {
    case SatisfactionKind::kCost:
      return cost;
    case SatisfactionKind::kCardinality:
      return Rational(1);
    case SatisfactionKind::kSqrtCost: {
      Rational mu = SqrtRoundDown(cost, sqrt_precision_);
      if (sgn(mu) <= 0) {
        throw ValidationError("sqrt satisfaction of cost " + ToString(cost) +
                              " rounds down to zero");
      }
      return mu;
    }
    case SatisfactionKind::kTable: {
      auto it = table_.find(cost);
      if (it == table_.end()) {
        throw ValidationError("satisfaction table has no entry for cost " +
                              ToString(cost));
      }
      return it->second;
    }
  }
  return Rational(0);
}

std::string SatisfactionFunction::Name() const {
  switch (kind_) {
    case SatisfactionKind::kCost:
      return "cost";
    case SatisfactionKind::kCardinality:
      return "card";
    case SatisfactionKind::kSqrtCost:
      return "sqrt";
    case SatisfactionKind::kTable:
      return "table";
  }
  return "unknown";
}

bool SatisfactionFunction::operator==(const SatisfactionFunction& other) const {
  return kind_ == other.kind_ && table_ == other.table_ &&
         sqrt_precision_ == other.sqrt_precision_;
}

SatisfactionFunction ParseSatisfactionTable(std::string_view text) {
  std::map<Rational, Rational> table;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line[line.find_first_not_of(" \t")] == '#') continue;
    const auto sep = line.find(';');
    if (sep == std::string::npos) {
      throw ValidationError("satisfaction table line " +
                            std::to_string(line_no) +
                            ": expected 'cost;satisfaction'");
    }
    try {
      Rational cost = ParseRational(line.substr(0, sep));
      Rational sat = ParseRational(line.substr(sep + 1));
      if (!table.emplace(cost, sat).second) {
        throw ValidationError("satisfaction table line " +
                              std::to_string(line_no) + ": duplicate cost " +
                              ToString(cost));
      }
    } catch (const std::invalid_argument& e) {
      throw ValidationError("satisfaction table line " +
                            std::to_string(line_no) + ": " + e.what());
    }
  }
  return SatisfactionFunction::Table(std::move(table));
}

SatisfactionFunction SatisfactionFromName(std::string_view name) {
  if (name == "cost") return SatisfactionFunction::Cost();
  if (name == "card" || name == "cardinality") {
    return SatisfactionFunction::Cardinality();
  }
  if (name == "sqrt") return SatisfactionFunction::SqrtCost();
  if (name.substr(0, 6) == "table:") {
    const std::string path(name.substr(6));
    std::ifstream file(path);
    if (!file) throw ValidationError("cannot open satisfaction table " + path);
    std::stringstream buffer;
    buffer << file.rdbuf();
    return ParseSatisfactionTable(buffer.str());
  }
  throw ValidationError("unknown satisfaction function '" + std::string(name) +
                        "' (expected cost, card, sqrt or table:<path>)");
}

Rational SatValue(const SatisfactionFunction& fn, const Instance& instance,
                  int project) {
  return fn.Value(instance.cost(project));
}

Rational VoterSatisfaction(const SatisfactionFunction& fn,
                           const Instance& instance, int voter,
                           const std::vector<int>& outcome) {
  if (voter < 0 || voter >= instance.voter_count()) {
    throw ValidationError("unknown voter " + std::to_string(voter + 1));
  }
  Rational total = 0;
  for (int p : outcome) {
    if (instance.Approves(voter, p)) total += SatValue(fn, instance, p);
  }
  return total;
}

Rational UtilitarianWelfare(const SatisfactionFunction& fn,
                            const Instance& instance,
                            const std::vector<int>& outcome) {
  Rational total = 0;
  for (int p : outcome) {
    total += instance.support_size(p) * SatValue(fn, instance, p);
  }
  return total;
}

Rational ProjectValue(const SatisfactionFunction& fn, const Instance& instance,
                      int project) {
  return instance.support_size(project) * SatValue(fn, instance, project) /
         instance.cost(project);
}

DnsReport CheckDns(const SatisfactionFunction& fn, const Instance& instance) {
  std::set<Rational> costs;
  for (const auto& project : instance.projects()) costs.insert(project.cost);
  std::vector<std::pair<Rational, Rational>> points;
  for (const auto& c : costs) points.emplace_back(c, fn.Value(c));
  DnsReport report;
  for (size_t a = 0; a < points.size(); ++a) {
    for (size_t b = a + 1; b < points.size(); ++b) {
      const auto& [cost_a, mu_a] = points[a];
      const auto& [cost_b, mu_b] = points[b];
      if (mu_a > mu_b) {
        report.is_dns = false;
        report.violation = DnsViolation{cost_a, cost_b,
                                        DnsCondition::kMonotoneSatisfaction};
        return report;
      }
      if (mu_a * cost_b < mu_b * cost_a) {
        report.is_dns = false;
        report.violation =
            DnsViolation{cost_a, cost_b, DnsCondition::kDecreasingDensity};
        return report;
      }
    }
  }
  return report;
}

void RequireDns(const SatisfactionFunction& fn, const Instance& instance) {
  const DnsReport report = CheckDns(fn, instance);
  if (report.is_dns) return;
  const auto& v = *report.violation;
  throw ValidationError(
      "satisfaction function '" + fn.Name() +
      "' is not DNS on this instance: condition (" +
      std::to_string(static_cast<int>(v.condition)) + ") fails for costs " +
      ToString(v.cost_a) + " and " + ToString(v.cost_b));
}

SatisfactionFunction SqrtCostFor(const Instance& instance, Integer precision) {
  SatisfactionFunction fn =
      SatisfactionFunction::SqrtCost(std::move(precision));
  RequireDns(fn, instance);
  return fn;
}

ProjectMetrics ComputeMetrics(const SatisfactionFunction& fn,
                              const Instance& instance) {
  ProjectMetrics metrics;
  const int m = instance.num_projects();
  metrics.mu.reserve(m);
  metrics.welfare.reserve(m);
  metrics.value.reserve(m);
  for (int p = 0; p < m; ++p) {
    Rational mu = SatValue(fn, instance, p);
    Rational welfare = instance.support_size(p) * mu;
    Rational value = welfare / instance.cost(p);
    metrics.mu.push_back(std::move(mu));
    metrics.welfare.push_back(std::move(welfare));
    metrics.value.push_back(std::move(value));
  }
  return metrics;
}

}  // namespace pbwelfare
