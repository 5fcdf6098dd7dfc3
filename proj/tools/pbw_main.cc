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

// pbw: participatory budgeting welfare toolkit.
//
// Exit codes: 0 success, 2 invalid input, 3 a bound failed on some row.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "pbwelfare/axioms.h"
#include "pbwelfare/generators.h"
#include "pbwelfare/guarantees.h"
#include "pbwelfare/instance.h"
#include "pbwelfare/maxsat.h"
#include "pbwelfare/pabulib_io.h"
#include "pbwelfare/rules.h"
#include "pbwelfare/satisfaction.h"
#include "pbwelfare/sweep.h"

namespace {

using nlohmann::ordered_json;
using pbwelfare::Rational;

constexpr int kExitValidation = 2;
constexpr int kExitBoundFailed = 3;

struct CommonOptions {
  std::string instance;
  std::string rule = "mes-greedy";
  std::string sat = "cost";
  std::string rule_sat;
  bool lenient = false;
  std::string out;
};

ordered_json RationalJson(const Rational& value) {
  return ordered_json{{"exact", pbwelfare::ToString(value)},
                      {"decimal", pbwelfare::ToDecimal(value)}};
}

ordered_json IntervalJson(const pbwelfare::RationalInterval& interval) {
  return ordered_json{{"lo", RationalJson(interval.lo)},
                      {"hi", RationalJson(interval.hi)}};
}

void WriteOutput(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw pbwelfare::ValidationError("cannot write '" + path + "'");
  out << text;
}

void Emit(const CommonOptions& options, const ordered_json& record) {
  WriteOutput(options.out, record.dump(2) + "\n");
}

pbwelfare::ValidatedInstance Load(const CommonOptions& options) {
  if (options.instance.empty()) {
    throw pbwelfare::ValidationError("--instance is required");
  }
  return pbwelfare::LoadInstanceFile(options.instance,
                                     options.lenient
                                         ? pbwelfare::ValidationMode::kLenient
                                         : pbwelfare::ValidationMode::kStrict);
}

std::string RuleSatName(const CommonOptions& options) {
  return options.rule_sat.empty() ? options.sat : options.rule_sat;
}

void AddCommon(CLI::App* command, CommonOptions* options, bool with_rule) {
  command->add_option("--instance", options->instance,
                      "Instance file (.pb Pabulib or .pbi native)");
  command->add_option("--sat", options->sat,
                      "Satisfaction function: cost|card|sqrt|table:<path>");
  if (with_rule) {
    command->add_option("--rule", options->rule,
                        "greedy|mes|mes-greedy|maxsat");
    command->add_option("--rule-sat", options->rule_sat,
                        "Function the rule runs with (defaults to --sat)");
  }
  command->add_flag("--lenient,!--strict", options->lenient,
                    "Drop invalid entities of native input with a warning");
  command->add_option("--out", options->out, "Output path (default stdout)");
}

ordered_json InstanceSummary(const pbwelfare::ValidatedInstance& loaded) {
  return ordered_json{
      {"n", loaded.instance.voter_count()},
      {"num_projects", loaded.instance.num_projects()},
      {"budget", pbwelfare::ToString(loaded.instance.budget())},
      {"warnings", loaded.warnings},
  };
}

int RunSolve(const CommonOptions& options, const std::string& trace_path) {
  const pbwelfare::ValidatedInstance loaded = Load(options);
  const pbwelfare::Instance& instance = loaded.instance;
  const auto actual = pbwelfare::SatisfactionFromName(options.sat);
  const auto rule_fn = pbwelfare::SatisfactionFromName(RuleSatName(options));
  const pbwelfare::RuleKind rule = pbwelfare::RuleFromName(options.rule);

  pbwelfare::Outcome outcome;
  std::optional<pbwelfare::MesResult> mes;
  if (rule == pbwelfare::RuleKind::kMes ||
      rule == pbwelfare::RuleKind::kMesGreedy) {
    mes = rule == pbwelfare::RuleKind::kMes
              ? pbwelfare::RunMes(instance, rule_fn)
              : pbwelfare::RunMesCompleted(instance, rule_fn);
    outcome = mes->outcome;
  } else {
    outcome = pbwelfare::RunRule(instance, rule_fn, rule);
  }
  if (!trace_path.empty()) {
    if (!mes) {
      throw pbwelfare::ValidationError(
          "--trace needs --rule mes or mes-greedy");
    }
    WriteOutput(trace_path, pbwelfare::SerializeTrace(instance, *mes));
  }

  ordered_json record;
  record["instance"] = InstanceSummary(loaded);
  record["rule"] = options.rule;
  record["sat_fn"] = options.sat;
  record["rule_sat_fn"] = RuleSatName(options);
  record["selected"] = outcome.Ids(instance);
  record["selected_sorted"] = outcome.SortedIds(instance);
  record["total_cost"] = RationalJson(outcome.total_cost);
  record["welfare"] = RationalJson(
      pbwelfare::UtilitarianWelfare(actual, instance, outcome.selected));
  if (mes) {
    record["mes_selected"] = ordered_json::array();
    for (int i = 0; i < mes->trace.completion_start_index; ++i) {
      record["mes_selected"].push_back(
          instance.project(outcome.selected[i]).id);
    }
  }
  Emit(options, record);
  return 0;
}

int RunRatio(const CommonOptions& options) {
  const pbwelfare::ValidatedInstance loaded = Load(options);
  const pbwelfare::Instance& instance = loaded.instance;
  const auto actual = pbwelfare::SatisfactionFromName(options.sat);
  const auto rule_fn = pbwelfare::SatisfactionFromName(RuleSatName(options));
  const pbwelfare::Outcome outcome = pbwelfare::RunRule(
      instance, rule_fn, pbwelfare::RuleFromName(options.rule));
  const pbwelfare::MaxSatResult optimum =
      pbwelfare::RunMaxSat(instance, actual);
  const Rational welfare =
      pbwelfare::UtilitarianWelfare(actual, instance, outcome.selected);

  ordered_json record;
  record["instance"] = InstanceSummary(loaded);
  record["rule"] = options.rule;
  record["sat_fn"] = options.sat;
  record["rule_sat_fn"] = RuleSatName(options);
  record["selected"] = outcome.SortedIds(instance);
  record["welfare"] = RationalJson(welfare);
  record["optimum"] = optimum.outcome.SortedIds(instance);
  record["optimum_welfare"] = RationalJson(optimum.welfare);
  record["ratio"] =
      RationalJson(pbwelfare::WelfareRatio(welfare, optimum.welfare));
  Emit(options, record);
  return 0;
}

int RunBounds(const CommonOptions& options, const std::string& budget,
              const std::string& c_min, const std::string& c_max) {
  std::optional<pbwelfare::GuaranteeReport> report;
  ordered_json record;
  if (!options.instance.empty()) {
    const pbwelfare::ValidatedInstance loaded = Load(options);
    report.emplace(pbwelfare::ComputeGuaranteeBounds(loaded.instance));
    record["instance"] = InstanceSummary(loaded);
  } else {
    if (budget.empty() || c_min.empty() || c_max.empty()) {
      throw pbwelfare::ValidationError(
          "bounds needs --instance or all of --b, --c-min, --c-max");
    }
    auto parse = [](const std::string& name, const std::string& text) {
      try {
        return pbwelfare::ParseRational(text);
      } catch (const std::invalid_argument& error) {
        throw pbwelfare::ValidationError(name + ": " + error.what());
      }
    };
    report.emplace(pbwelfare::ComputeGuaranteeBounds(parse("--b", budget),
                                                     parse("--c-min", c_min),
                                                     parse("--c-max", c_max)));
  }
  const pbwelfare::GuaranteeReport& r = *report;
  record["b"] = RationalJson(r.budget);
  record["c_min"] = RationalJson(r.c_min);
  record["c_max"] = RationalJson(r.c_max);
  record["k1"] = RationalJson(r.k1);
  record["k2"] = RationalJson(r.k2);
  record["greedy_bound"] = RationalJson(r.greedy_bound);
  ordered_json mes;
  mes["form"] = "2*sqrt(" + pbwelfare::ToString(r.mes_bound.radicand()) +
                ")-" + pbwelfare::ToString(r.mes_bound.offset());
  if (auto exact = r.mes_bound.ExactValue()) {
    mes["exact"] = RationalJson(*exact);
  }
  mes["bracket"] = IntervalJson(r.mes_interval);
  record["mes_bound"] = mes;
  record["mismatch_bound"] = RationalJson(r.mismatch_bound);
  record["ejr1_upper_bound"] = RationalJson(r.ejr1_upper_bound);
  record["floor_sqrt_k2"] = r.floor_sqrt_k2.get_str();
  record["x"] = RationalJson(r.x);
  record["clamped"] = ordered_json{
      {"greedy_bound", RationalJson(r.greedy_bound_clamped)},
      {"mes_bound", IntervalJson(r.mes_interval_clamped)},
      {"mismatch_bound", RationalJson(r.mismatch_bound_clamped)},
      {"ejr1_upper_bound", RationalJson(r.ejr1_upper_bound_clamped)},
  };
  Emit(options, record);
  return 0;
}

int RunCheckEjr1(const CommonOptions& options, const std::string& outcome_ids) {
  const pbwelfare::ValidatedInstance loaded = Load(options);
  const pbwelfare::Instance& instance = loaded.instance;
  const auto fn = pbwelfare::SatisfactionFromName(options.sat);
  pbwelfare::Outcome outcome;
  ordered_json record;
  record["instance"] = InstanceSummary(loaded);
  record["sat_fn"] = options.sat;
  if (!outcome_ids.empty()) {
    std::vector<std::string> ids;
    std::stringstream in(outcome_ids);
    for (std::string id; std::getline(in, id, ',');) {
      if (!id.empty()) ids.push_back(id);
    }
    outcome = pbwelfare::OutcomeFromIds(instance, ids);
    record["rule"] = nullptr;
  } else {
    const auto rule_fn = pbwelfare::SatisfactionFromName(RuleSatName(options));
    outcome = pbwelfare::RunRule(instance, rule_fn,
                                 pbwelfare::RuleFromName(options.rule));
    record["rule"] = options.rule;
  }
  record["outcome"] = outcome.SortedIds(instance);
  if (!pbwelfare::Ejr1Checkable(instance)) {
    record["satisfied"] = "skipped";
    Emit(options, record);
    return 0;
  }
  const pbwelfare::Ejr1Result result =
      pbwelfare::CheckEjr1(instance, fn, outcome);
  record["satisfied"] = result.satisfied;
  if (result.witness) {
    ordered_json witness;
    std::vector<std::string> projects;
    for (int p : result.witness->projects) {
      projects.push_back(instance.project(p).id);
    }
    std::vector<int> group;
    for (int voter : result.witness->group) group.push_back(voter + 1);
    witness["projects"] = projects;
    witness["group"] = group;
    witness["group_threshold"] = RationalJson(result.witness->group_threshold);
    record["witness"] = witness;
  } else {
    record["witness"] = nullptr;
  }
  Emit(options, record);
  return 0;
}

pbwelfare::ConstructionSpec SingleConstruction(
    const std::string& text, const std::vector<std::string>& params) {
  std::string spec_text = text;
  for (const std::string& param : params) {
    spec_text += (spec_text.find(':') == std::string::npos ? ":" : ",") + param;
  }
  const std::vector<pbwelfare::ConstructionSpec> specs =
      pbwelfare::ExpandConstructionGrid(spec_text);
  if (specs.size() != 1) {
    throw pbwelfare::ValidationError(
        "generate takes single parameter values, not a grid");
  }
  return specs.front();
}

int RunGenerate(const CommonOptions& options, const std::string& construction,
                const std::vector<std::string>& params,
                const std::string& expected_path) {
  const pbwelfare::GeneratedConstruction built =
      pbwelfare::Generate(SingleConstruction(construction, params));
  WriteOutput(options.out, pbwelfare::EmitNative(built.instance));
  std::string expected_out = expected_path;
  if (expected_out.empty() && !options.out.empty() && options.out != "-") {
    expected_out = options.out + ".expected.json";
  }
  if (!expected_out.empty()) {
    ordered_json expected =
        ordered_json::parse(pbwelfare::ExpectedToJson(built.expected));
    expected["sat_fn"] = built.fn.Name();
    expected["rule_sat_fn"] = built.rule_fn.Name();
    WriteOutput(expected_out, expected.dump(2) + "\n");
  }
  return 0;
}

struct SweepOptions {
  std::vector<std::string> instances;
  std::vector<std::string> constructions;
  std::vector<std::string> sats;
  std::vector<std::string> rules;
  int random = 0;
  std::uint64_t seed = 1;
  int n_max = 12;
  int p_max = 10;
  int den = 4;
  int jobs = 1;
  bool no_ejr1 = false;
  bool oracle = false;
};

int RunSweepCommand(const CommonOptions& common, const SweepOptions& options) {
  pbwelfare::SweepConfig config;
  config.mode = common.lenient ? pbwelfare::ValidationMode::kLenient
                               : pbwelfare::ValidationMode::kStrict;
  for (const std::string& path : options.instances) {
    config.sources.push_back(pbwelfare::FileSource(path));
  }
  for (const std::string& text : options.constructions) {
    for (const auto& spec : pbwelfare::ExpandConstructionGrid(text)) {
      config.sources.push_back(pbwelfare::ConstructionSource(spec));
    }
  }
  pbwelfare::RandomInstanceConfig random;
  random.n_max = options.n_max;
  random.p_max = options.p_max;
  random.cost_denominator_bound = options.den;
  for (int i = 0; i < options.random; ++i) {
    config.sources.push_back(pbwelfare::RandomSource(options.seed + i, random));
  }
  const std::vector<std::string> sats =
      options.sats.empty() ? std::vector<std::string>{"cost"} : options.sats;
  for (const std::string& name : sats) {
    config.fns.push_back(pbwelfare::LabeledFunctionFromName(name));
  }
  if (!common.rule_sat.empty()) {
    config.rule_fn = pbwelfare::LabeledFunctionFromName(common.rule_sat);
  }
  const std::vector<std::string> rules =
      options.rules.empty()
          ? std::vector<std::string>{"greedy", "mes", "mes-greedy", "maxsat"}
          : options.rules;
  for (const std::string& name : rules) {
    config.rules.push_back(pbwelfare::RuleFromName(name));
  }
  config.check_ejr1 = !options.no_ejr1;
  config.check_oracle = options.oracle;
  config.jobs = options.jobs;

  const std::vector<pbwelfare::ReportRecord> rows = pbwelfare::RunSweep(config);
  WriteOutput(common.out, pbwelfare::EmitReportCsv(rows));

  int failed = 0;
  int errors = 0;
  for (const auto& row : rows) {
    if (row.error) {
      ++errors;
      std::cerr << "error: " << row.instance_id << " " << row.rule << ": "
                << *row.error << "\n";
    } else if (row.bound_holds == false) {
      ++failed;
      std::cerr << "bound failed: " << row.instance_id << " " << row.sat_fn
                << " " << row.rule << "\n";
    }
  }
  if (failed > 0) return kExitBoundFailed;
  if (errors > 0) return kExitValidation;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Participatory budgeting welfare toolkit"};
  app.require_subcommand(1);

  CommonOptions solve_options;
  std::string trace_path;
  CLI::App* solve = app.add_subcommand("solve", "Run one rule on an instance");
  AddCommon(solve, &solve_options, true);
  solve->add_option("--trace", trace_path, "Write the MES round trace here");

  CommonOptions ratio_options;
  CLI::App* ratio =
      app.add_subcommand("ratio", "Welfare of a rule relative to MaxSat");
  AddCommon(ratio, &ratio_options, true);

  CommonOptions bounds_options;
  std::string budget, c_min, c_max;
  CLI::App* bounds =
      app.add_subcommand("bounds", "Utilitarian guarantee bounds");
  AddCommon(bounds, &bounds_options, false);
  bounds->add_option("--b", budget, "Budget");
  bounds->add_option("--c-min", c_min, "Cheapest project cost");
  bounds->add_option("--c-max", c_max, "Most expensive project cost");

  CommonOptions ejr1_options;
  std::string outcome_ids;
  CLI::App* ejr1 = app.add_subcommand(
      "check-ejr1", "Check EJR up to one project for a rule or outcome");
  AddCommon(ejr1, &ejr1_options, true);
  ejr1->add_option("--outcome", outcome_ids,
                   "Comma-separated project ids (instead of --rule)");

  CommonOptions generate_options;
  std::string construction, expected_path;
  std::vector<std::string> params;
  CLI::App* generate =
      app.add_subcommand("generate", "Write a constructed instance");
  generate->add_option("--construction", construction,
                       "kind or kind:key=value,...")
      ->required();
  generate->add_option("--param", params, "key=value (repeatable)");
  generate->add_option("--out", generate_options.out,
                       "Instance output path (default stdout)");
  generate->add_option("--expected", expected_path,
                       "Expected-record path (default <out>.expected.json)");

  CommonOptions sweep_common;
  SweepOptions sweep_options;
  CLI::App* sweep = app.add_subcommand("sweep", "Batch evaluation to CSV");
  sweep->add_option("--instance", sweep_options.instances,
                    "Instance file (repeatable)");
  sweep->add_option("--construction", sweep_options.constructions,
                    "kind:key=v,key=a|b,key=lo..hi (repeatable)");
  sweep->add_option("--random", sweep_options.random,
                    "Number of seeded random instances");
  sweep->add_option("--seed", sweep_options.seed, "First random seed");
  sweep->add_option("--n-max", sweep_options.n_max, "Random: max voters");
  sweep->add_option("--p-max", sweep_options.p_max, "Random: max projects");
  sweep->add_option("--den", sweep_options.den,
                    "Random: cost denominator bound");
  sweep->add_option("--sat", sweep_options.sats,
                    "Satisfaction function (repeatable; default cost)");
  sweep->add_option("--rule-sat", sweep_common.rule_sat,
                    "Function the rules run with (mismatched runs)");
  sweep->add_option("--rule", sweep_options.rules,
                    "Rule (repeatable; default all)");
  sweep->add_option("--jobs", sweep_options.jobs, "Parallel workers")
      ->check(CLI::PositiveNumber);
  sweep->add_flag("--no-ejr1", sweep_options.no_ejr1, "Skip EJR1 checks");
  sweep->add_flag("--oracle", sweep_options.oracle,
                  "Cross-check MaxSat against brute force");
  sweep->add_flag("--lenient,!--strict", sweep_common.lenient,
                  "Lenient validation of native input");
  sweep->add_option("--out", sweep_common.out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*solve) return RunSolve(solve_options, trace_path);
    if (*ratio) return RunRatio(ratio_options);
    if (*bounds) return RunBounds(bounds_options, budget, c_min, c_max);
    if (*ejr1) return RunCheckEjr1(ejr1_options, outcome_ids);
    if (*generate) {
      return RunGenerate(generate_options, construction, params,
                         expected_path);
    }
    if (*sweep) return RunSweepCommand(sweep_common, sweep_options);
  } catch (const pbwelfare::ValidationError& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitValidation;
  }
  return 0;
}
