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

#include "pbwelfare/sweep.h"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>
#include <utility>

#include "pbwelfare/axioms.h"
#include "pbwelfare/guarantees.h"
#include "pbwelfare/maxsat.h"

namespace pbwelfare {

namespace {

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::string Trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> Split(const std::string& text, char separator) {
  std::vector<std::string> parts;
  std::string current;
  std::istringstream in(text);
  while (std::getline(in, current, separator)) parts.push_back(Trim(current));
  if (!text.empty() && text.back() == separator) parts.emplace_back();
  return parts;
}

Rational ParseParam(const std::string& key, const std::string& text) {
  try {
    return ParseRational(text);
  } catch (const std::invalid_argument&) {
    throw ValidationError("parameter '" + key + "': malformed value '" +
                          text + "'");
  }
}

std::vector<Rational> ParseParamValues(const std::string& key,
                                       const std::string& text) {
  std::vector<Rational> values;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const Rational lo = ParseParam(key, text.substr(0, dots));
    const Rational hi = ParseParam(key, text.substr(dots + 2));
    if (lo.get_den() != 1 || hi.get_den() != 1 || lo > hi) {
      throw ValidationError("parameter '" + key +
                            "': range needs integers lo <= hi");
    }
    if (hi - lo > 100000) {
      throw ValidationError("parameter '" + key + "': range too large");
    }
    for (Rational v = lo; v <= hi; v += 1) values.push_back(v);
    return values;
  }
  for (const std::string& part : Split(text, '|')) {
    values.push_back(ParseParam(key, part));
  }
  return values;
}

std::string SourceId(const ConstructionSpec& spec) {
  std::string id = ConstructionName(spec.kind) + "(";
  bool first = true;
  for (const auto& [key, value] : spec.params) {
    id += (first ? "" : ";") + key + "=" + ToString(value);
    first = false;
  }
  return id + ")";
}

ReportRecord ErrorRow(const std::string& instance_id, const std::string& sat_fn,
                      RuleKind rule, const std::string& message) {
  ReportRecord row;
  row.instance_id = instance_id;
  row.sat_fn = sat_fn;
  row.rule = RuleName(rule);
  row.error = message;
  return row;
}

std::string SatLabel(const LabeledFunction& actual,
                     const LabeledFunction& rule_fn) {
  if (actual.fn == rule_fn.fn) return actual.label;
  return actual.label + ":" + rule_fn.label;
}

// Every project bought by MES itself has value at least n * mu_min / b.
bool MinValueHolds(const Instance& instance, const SatisfactionFunction& fn,
                   const MesTrace& trace) {
  if (trace.rounds.empty()) return true;
  const Rational mu_min = ComputeInstanceParams(instance, fn).mu_min;
  const Rational threshold =
      instance.voter_count() * mu_min / instance.budget();
  for (const MesRound& round : trace.rounds) {
    if (ProjectValue(fn, instance, round.project) < threshold) return false;
  }
  return true;
}

std::vector<ReportRecord> EvaluateSource(const SweepSource& source,
                                         const SweepConfig& config) {
  std::vector<std::pair<LabeledFunction, LabeledFunction>> pairs;
  std::optional<Instance> instance;
  std::string load_error;
  try {
    switch (source.kind) {
      case SweepSource::Kind::kFile:
        instance.emplace(
            std::move(LoadInstanceFile(source.path, config.mode).instance));
        break;
      case SweepSource::Kind::kRandom:
        instance.emplace(GenerateRandomInstance(source.seed, source.random));
        break;
      case SweepSource::Kind::kConstruction: {
        GeneratedConstruction built = Generate(source.construction);
        pairs.emplace_back(
            LabeledFunction{built.fn.Name(), built.fn},
            LabeledFunction{built.rule_fn.Name(), built.rule_fn});
        instance.emplace(std::move(built.instance));
        break;
      }
    }
  } catch (const std::exception& error) {
    load_error = error.what();
  }
  if (source.kind != SweepSource::Kind::kConstruction) {
    for (const LabeledFunction& fn : config.fns) {
      pairs.emplace_back(fn, config.rule_fn.value_or(fn));
    }
  }

  std::vector<ReportRecord> rows;
  if (!instance) {
    if (pairs.empty()) {
      for (RuleKind rule : config.rules) {
        rows.push_back(ErrorRow(source.id, "", rule, load_error));
      }
    }
    for (const auto& [actual, rule_fn] : pairs) {
      for (RuleKind rule : config.rules) {
        rows.push_back(
            ErrorRow(source.id, SatLabel(actual, rule_fn), rule, load_error));
      }
    }
    return rows;
  }
  for (const auto& [actual, rule_fn] : pairs) {
    std::vector<ReportRecord> part = EvaluateInstance(
        source.id, *instance, actual, rule_fn, config.rules, config);
    rows.insert(rows.end(), std::make_move_iterator(part.begin()),
                std::make_move_iterator(part.end()));
  }
  return rows;
}

}  // namespace

std::string RuleName(RuleKind rule) {
  switch (rule) {
    case RuleKind::kGreedy:
      return "greedy";
    case RuleKind::kMes:
      return "mes";
    case RuleKind::kMesGreedy:
      return "mes-greedy";
    case RuleKind::kMaxSat:
      return "maxsat";
  }
  return "";
}

RuleKind RuleFromName(const std::string& name) {
  if (name == "greedy") return RuleKind::kGreedy;
  if (name == "mes") return RuleKind::kMes;
  if (name == "mes-greedy") return RuleKind::kMesGreedy;
  if (name == "maxsat") return RuleKind::kMaxSat;
  throw ValidationError("unknown rule '" + name +
                        "'; expected greedy, mes, mes-greedy or maxsat");
}

Outcome RunRule(const Instance& instance, const SatisfactionFunction& fn,
                RuleKind rule) {
  switch (rule) {
    case RuleKind::kGreedy:
      return RunGreedy(instance, fn);
    case RuleKind::kMes:
      return RunMes(instance, fn).outcome;
    case RuleKind::kMesGreedy:
      return RunMesCompleted(instance, fn).outcome;
    case RuleKind::kMaxSat:
      return RunMaxSat(instance, fn).outcome;
  }
  throw ValidationError("unhandled rule");
}

ValidatedInstance LoadInstanceFile(const std::string& path,
                                   ValidationMode mode) {
  const std::string text = ReadFile(path);
  if (std::filesystem::path(path).extension() == ".pb") {
    PabulibParseResult parsed = ParsePabulib(text);
    return ValidatedInstance{std::move(parsed.instance),
                             std::move(parsed.warnings)};
  }
  std::vector<std::string> warnings;
  Instance instance = ParseNative(text, mode, &warnings);
  return ValidatedInstance{std::move(instance), std::move(warnings)};
}

LabeledFunction LabeledFunctionFromName(const std::string& name) {
  return LabeledFunction{name == "cardinality" ? "card" : name,
                         SatisfactionFromName(name)};
}

SweepSource FileSource(const std::string& path) {
  SweepSource source;
  source.kind = SweepSource::Kind::kFile;
  source.id = std::filesystem::path(path).filename().string();
  source.path = path;
  return source;
}

SweepSource ConstructionSource(const ConstructionSpec& spec) {
  SweepSource source;
  source.kind = SweepSource::Kind::kConstruction;
  source.id = SourceId(spec);
  source.construction = spec;
  return source;
}

SweepSource RandomSource(std::uint64_t seed,
                         const RandomInstanceConfig& config) {
  SweepSource source;
  source.kind = SweepSource::Kind::kRandom;
  source.id = "random-" + std::to_string(seed);
  source.seed = seed;
  source.random = config;
  return source;
}

std::vector<ConstructionSpec> ExpandConstructionGrid(const std::string& text) {
  const auto colon = text.find(':');
  const ConstructionKind kind =
      ConstructionFromName(Trim(text.substr(0, colon)));
  std::vector<std::pair<std::string, std::vector<Rational>>> axes;
  if (colon != std::string::npos && colon + 1 < text.size()) {
    for (const std::string& item : Split(text.substr(colon + 1), ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw ValidationError("construction parameter '" + item +
                              "' is not key=value");
      }
      const std::string key = Trim(item.substr(0, eq));
      for (const auto& axis : axes) {
        if (axis.first == key) {
          throw ValidationError("parameter '" + key + "' given twice");
        }
      }
      axes.emplace_back(key, ParseParamValues(key, Trim(item.substr(eq + 1))));
    }
  }
  std::vector<ConstructionSpec> specs = {ConstructionSpec{kind, {}}};
  for (const auto& [key, values] : axes) {
    std::vector<ConstructionSpec> next;
    for (const ConstructionSpec& spec : specs) {
      for (const Rational& value : values) {
        ConstructionSpec extended = spec;
        extended.params[key] = value;
        next.push_back(std::move(extended));
      }
    }
    specs = std::move(next);
  }
  return specs;
}

void ValidateSweepConfig(const SweepConfig& config) {
  if (config.sources.empty()) {
    throw ValidationError("sweep needs at least one instance source");
  }
  if (config.rules.empty()) throw ValidationError("sweep needs a rule");
  bool only_constructions = true;
  for (const SweepSource& source : config.sources) {
    if (source.kind != SweepSource::Kind::kConstruction) {
      only_constructions = false;
    }
  }
  if (config.fns.empty() && !only_constructions) {
    throw ValidationError("sweep needs a satisfaction function");
  }
  if (config.jobs < 1) throw ValidationError("jobs must be at least 1");
}

std::vector<ReportRecord> EvaluateInstance(
    const std::string& instance_id, const Instance& instance,
    const LabeledFunction& actual, const LabeledFunction& rule_fn,
    const std::vector<RuleKind>& rules, const SweepConfig& config) {
  const bool mismatched = !(actual.fn == rule_fn.fn);
  ReportRecord base;
  base.instance_id = instance_id;
  base.n = instance.voter_count();
  base.num_projects = instance.num_projects();
  base.b = instance.budget();
  base.sat_fn = SatLabel(actual, rule_fn);

  std::vector<ReportRecord> rows;
  std::optional<GuaranteeReport> bounds;
  std::optional<MaxSatResult> optimum;
  bool actual_dns = false;
  bool rule_dns = false;
  try {
    if (instance.num_projects() > 0) {
      bounds.emplace(ComputeGuaranteeBounds(instance));
      base.c_min = bounds->c_min;
      base.c_max = bounds->c_max;
      base.k1 = bounds->k1;
      base.k2 = bounds->k2;
      base.greedy_bound = bounds->greedy_bound;
      base.mes_bound_hi = bounds->mes_interval.hi;
      base.mismatch_bound = bounds->mismatch_bound;
      base.ejr1_upper_bound = bounds->ejr1_upper_bound;
      actual_dns = CheckDns(actual.fn, instance).is_dns;
      rule_dns = CheckDns(rule_fn.fn, instance).is_dns;
    }
    optimum.emplace(RunMaxSat(instance, actual.fn));
    base.uw_opt = optimum->welfare;
  } catch (const std::exception& error) {
    for (RuleKind rule : rules) {
      ReportRecord row = base;
      row.rule = RuleName(rule);
      row.error = error.what();
      rows.push_back(std::move(row));
    }
    return rows;
  }

  for (RuleKind rule : rules) {
    ReportRecord row = base;
    row.rule = RuleName(rule);
    try {
      Outcome outcome;
      std::optional<MesTrace> trace;
      if (rule == RuleKind::kMaxSat && !mismatched) {
        outcome = optimum->outcome;
      } else if (rule == RuleKind::kMes || rule == RuleKind::kMesGreedy) {
        MesResult result = rule == RuleKind::kMes
                               ? RunMes(instance, rule_fn.fn)
                               : RunMesCompleted(instance, rule_fn.fn);
        outcome = std::move(result.outcome);
        trace = std::move(result.trace);
      } else {
        outcome = RunRule(instance, rule_fn.fn, rule);
      }
      row.uw = UtilitarianWelfare(actual.fn, instance, outcome.selected);
      row.ratio = WelfareRatio(*row.uw, optimum->welfare);

      if (config.check_bounds && bounds) {
        const Rational& ratio = *row.ratio;
        switch (rule) {
          case RuleKind::kGreedy:
            if (!mismatched) {
              row.bound_holds = ratio >= bounds->greedy_bound;
            } else if (actual_dns && rule_dns) {
              row.bound_holds = ratio >= bounds->mismatch_bound;
            }
            break;
          case RuleKind::kMes:
            row.bound_holds = MinValueHolds(instance, rule_fn.fn, *trace);
            break;
          case RuleKind::kMesGreedy: {
            bool holds = MinValueHolds(instance, rule_fn.fn, *trace);
            if (!mismatched && actual_dns) {
              const ComparativeReport comparison =
                  CompareMesWithGreedy(instance, actual.fn);
              holds = holds && bounds->mes_bound.AtMost(ratio) &&
                      comparison.bound_holds &&
                      comparison.truncated_bound_holds;
            }
            row.bound_holds = holds;
            break;
          }
          case RuleKind::kMaxSat:
            if (!mismatched) {
              bool holds = ratio == 1;
              if (config.check_oracle &&
                  instance.num_projects() <= kBruteForceProjectLimit) {
                holds = holds &&
                        BruteForceMaxSat(instance, actual.fn).welfare ==
                            optimum->welfare;
              }
              row.bound_holds = holds;
            }
            break;
        }
      }

      if (config.check_ejr1) {
        if (!Ejr1Checkable(instance)) {
          row.ejr1 = Ejr1Status::kSkipped;
        } else {
          row.ejr1 = CheckEjr1(instance, actual.fn, outcome).satisfied
                         ? Ejr1Status::kSatisfied
                         : Ejr1Status::kViolated;
        }
      }
    } catch (const std::exception& error) {
      row.error = error.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ReportRecord> RunSweep(const SweepConfig& config) {
  ValidateSweepConfig(config);
  const std::size_t count = config.sources.size();
  std::vector<std::vector<ReportRecord>> slots(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      slots[i] = EvaluateSource(config.sources[i], config);
    }
  };
  const std::size_t threads =
      std::min<std::size_t>(static_cast<std::size_t>(config.jobs), count);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& thread : pool) thread.join();
  }
  std::vector<ReportRecord> rows;
  for (auto& slot : slots) {
    rows.insert(rows.end(), std::make_move_iterator(slot.begin()),
                std::make_move_iterator(slot.end()));
  }
  return rows;
}

}  // namespace pbwelfare
