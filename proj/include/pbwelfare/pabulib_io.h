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

#ifndef PBWELFARE_PABULIB_IO_H_
#define PBWELFARE_PABULIB_IO_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pbwelfare/instance.h"
#include "pbwelfare/rational.h"

namespace pbwelfare {

// One data row of a Pabulib section, keyed by the section's header row.
using PabulibRow = std::map<std::string, std::string>;

struct PabulibDocument {
  std::map<std::string, std::string> meta;
  std::vector<std::string> project_columns;
  std::vector<PabulibRow> projects;
  std::vector<std::string> vote_columns;
  std::vector<PabulibRow> votes;
};

struct PabulibParseResult {
  Instance instance;
  PabulibDocument document;
  std::vector<std::string> warnings;
};

// Parses a Pabulib (.pb) approval instance. Decimal costs and budget are read
// exactly. Conversion is lenient: over-budget projects and references to
// unknown projects are dropped with a warning each. Voters with an empty vote
// field keep an empty ballot. Throws ValidationError on a missing section,
// a vote_type other than "approval", or an unparseable cost or budget.
PabulibParseResult ParsePabulib(std::string_view text);

// Native (.pbi) format: a JSON object
//   {"format": "pbi/1", "budget": "<rational>",
//    "projects": [{"id": ..., "cost": "<rational>"}, ...],
//    "approvals": [["<id>", ...], ...]}
// emitted with one project or ballot per line. Parsing validates strictly by
// default; in lenient mode the dropped entities are appended to `warnings`
// when given. Throws ValidationError on malformed input.
Instance ParseNative(std::string_view text,
                     ValidationMode mode = ValidationMode::kStrict,
                     std::vector<std::string>* warnings = nullptr);
std::string EmitNative(const Instance& instance);

enum class Ejr1Status { kSatisfied, kViolated, kSkipped, kNotChecked };

// One row of a sweep report. Optional cells render empty; an optional flag
// renders "na".
struct ReportRecord {
  std::string instance_id;
  int n = 0;
  int num_projects = 0;
  std::optional<Rational> b;
  std::optional<Rational> c_min;
  std::optional<Rational> c_max;
  std::optional<Rational> k1;
  std::optional<Rational> k2;
  std::string sat_fn;
  std::string rule;
  std::optional<Rational> uw;
  std::optional<Rational> uw_opt;
  std::optional<Rational> ratio;
  std::optional<Rational> greedy_bound;
  std::optional<Rational> mes_bound_hi;
  std::optional<Rational> mismatch_bound;
  std::optional<Rational> ejr1_upper_bound;
  std::optional<bool> bound_holds;
  Ejr1Status ejr1 = Ejr1Status::kNotChecked;
  // Set on rows whose evaluation failed; rendered in the last column.
  std::optional<std::string> error;
};

// Header line of the CSV report, without the trailing newline.
const std::string& ReportHeader();

// Renders a rational cell as "<exact> (<decimal to 12 places>)".
std::string ReportCell(const Rational& value);

// CSV text: the header plus one line per record, "\n" line endings.
std::string EmitReportCsv(const std::vector<ReportRecord>& records);

}  // namespace pbwelfare

#endif  // PBWELFARE_PABULIB_IO_H_
