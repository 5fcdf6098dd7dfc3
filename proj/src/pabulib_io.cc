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

#include "pbwelfare/pabulib_io.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <nlohmann/json.hpp>

namespace pbwelfare {

namespace {

using nlohmann::ordered_json;

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Splits on `separator` outside double quotes; "" inside quotes is a quote.
std::vector<std::string> SplitFields(std::string_view line, char separator) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == separator) {
      fields.emplace_back(Trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  fields.emplace_back(Trim(current));
  return fields;
}

enum class Section { kNone, kMeta, kProjects, kVotes };

Rational ParseAmount(const std::string& text, const std::string& what) {
  try {
    return ParseRational(text);
  } catch (const std::invalid_argument&) {
    throw ValidationError("unparseable " + what + " '" + text + "'");
  }
}

const std::string& Column(const PabulibRow& row, const std::string& name,
                          const std::string& section, std::size_t line) {
  auto it = row.find(name);
  if (it == row.end()) {
    throw ValidationError(section + " row at line " + std::to_string(line) +
                          " has no '" + name + "' column");
  }
  return it->second;
}

[[noreturn]] void SchemaError(const std::string& message) {
  throw ValidationError("native format: " + message);
}

const ordered_json& Field(const ordered_json& object, const char* key) {
  auto it = object.find(key);
  if (it == object.end()) {
    SchemaError(std::string("missing field '") + key + "'");
  }
  return *it;
}

std::string StringField(const ordered_json& value, const std::string& what) {
  if (!value.is_string()) SchemaError(what + " must be a string");
  return value.get<std::string>();
}

Rational RationalField(const ordered_json& value, const std::string& what) {
  const std::string text = StringField(value, what);
  try {
    return ParseRational(text);
  } catch (const std::invalid_argument& error) {
    SchemaError(what + ": " + error.what());
  }
}

std::string CsvEscape(const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string OptionalCell(const std::optional<Rational>& value) {
  return value ? ReportCell(*value) : std::string();
}

std::string Ejr1Cell(Ejr1Status status) {
  switch (status) {
    case Ejr1Status::kSatisfied:
      return "true";
    case Ejr1Status::kViolated:
      return "false";
    case Ejr1Status::kSkipped:
      return "skipped";
    case Ejr1Status::kNotChecked:
      return "na";
  }
  return "na";
}

}  // namespace

PabulibParseResult ParsePabulib(std::string_view text) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  PabulibDocument document;
  bool seen_meta = false;
  bool seen_projects = false;
  bool seen_votes = false;
  Section section = Section::kNone;
  std::vector<std::string> header;
  std::vector<std::size_t> row_lines;
  std::vector<std::size_t> vote_lines;

  std::size_t line_number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = Trim(text.substr(start, end - start));
    start = end + 1;
    ++line_number;
    if (line.empty()) continue;

    if (line == "META" || line == "PROJECTS" || line == "VOTES") {
      section = line == "META"       ? Section::kMeta
                : line == "PROJECTS" ? Section::kProjects
                                     : Section::kVotes;
      (section == Section::kMeta       ? seen_meta
       : section == Section::kProjects ? seen_projects
                                       : seen_votes) = true;
      header.clear();
      continue;
    }
    if (section == Section::kNone) {
      throw ValidationError("line " + std::to_string(line_number) +
                            ": data before the first section");
    }
    std::vector<std::string> fields = SplitFields(line, ';');
    if (header.empty()) {
      header = std::move(fields);
      if (section == Section::kProjects) document.project_columns = header;
      if (section == Section::kVotes) document.vote_columns = header;
      continue;
    }
    if (section == Section::kMeta) {
      if (fields.size() < 2) {
        throw ValidationError("line " + std::to_string(line_number) +
                              ": META rows need a key and a value");
      }
      document.meta[fields[0]] = fields[1];
      continue;
    }
    if (fields.size() > header.size()) {
      throw ValidationError("line " + std::to_string(line_number) +
                            ": more fields than header columns");
    }
    PabulibRow row;
    for (std::size_t i = 0; i < header.size(); ++i) {
      row[header[i]] = i < fields.size() ? fields[i] : std::string();
    }
    if (section == Section::kProjects) {
      document.projects.push_back(std::move(row));
      row_lines.push_back(line_number);
    } else {
      document.votes.push_back(std::move(row));
      vote_lines.push_back(line_number);
    }
  }

  if (!seen_meta) throw ValidationError("missing META section");
  if (!seen_projects) throw ValidationError("missing PROJECTS section");
  if (!seen_votes) throw ValidationError("missing VOTES section");

  auto vote_type = document.meta.find("vote_type");
  if (vote_type == document.meta.end()) {
    throw ValidationError("META has no vote_type");
  }
  if (vote_type->second != "approval") {
    throw ValidationError("unsupported vote_type '" + vote_type->second +
                          "'; only approval ballots are supported");
  }
  auto budget = document.meta.find("budget");
  if (budget == document.meta.end()) {
    throw ValidationError("META has no budget");
  }

  RawInstance raw;
  raw.budget = ParseAmount(budget->second, "budget");
  if (sgn(raw.budget) <= 0) {
    throw ValidationError("budget must be positive, got '" + budget->second +
                          "'");
  }
  for (std::size_t i = 0; i < document.projects.size(); ++i) {
    const PabulibRow& row = document.projects[i];
    const std::string& id = Column(row, "project_id", "PROJECTS", row_lines[i]);
    const std::string& cost = Column(row, "cost", "PROJECTS", row_lines[i]);
    raw.projects.push_back({id, ParseAmount(cost, "cost of project " + id)});
  }
  for (std::size_t i = 0; i < document.votes.size(); ++i) {
    const std::string& vote =
        Column(document.votes[i], "vote", "VOTES", vote_lines[i]);
    std::vector<std::string> ballot;
    if (!vote.empty()) {
      for (std::string& id : SplitFields(vote, ',')) {
        if (!id.empty()) ballot.push_back(std::move(id));
      }
    }
    raw.approvals.push_back(std::move(ballot));
  }

  ValidatedInstance validated =
      ValidateInstance(std::move(raw), ValidationMode::kLenient);
  return PabulibParseResult{std::move(validated.instance), std::move(document),
                            std::move(validated.warnings)};
}

Instance ParseNative(std::string_view text, ValidationMode mode,
                     std::vector<std::string>* warnings) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& error) {
    SchemaError(std::string("invalid JSON: ") + error.what());
  }
  if (!doc.is_object()) SchemaError("top level must be an object");
  if (auto format = doc.find("format"); format != doc.end()) {
    if (StringField(*format, "format") != "pbi/1") {
      SchemaError("unsupported format '" + format->get<std::string>() + "'");
    }
  }
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& key = it.key();
    if (key != "format" && key != "budget" && key != "projects" &&
        key != "approvals") {
      SchemaError("unknown field '" + key + "'");
    }
  }

  RawInstance raw;
  raw.budget = RationalField(Field(doc, "budget"), "budget");
  const ordered_json& projects = Field(doc, "projects");
  if (!projects.is_array()) SchemaError("projects must be a list");
  for (const ordered_json& entry : projects) {
    if (!entry.is_object() || entry.size() != 2) {
      SchemaError("each project must be an object {id, cost}");
    }
    const std::string id = StringField(Field(entry, "id"), "project id");
    raw.projects.push_back(
        {id, RationalField(Field(entry, "cost"), "cost of project " + id)});
  }
  const ordered_json& approvals = Field(doc, "approvals");
  if (!approvals.is_array()) SchemaError("approvals must be a list");
  for (const ordered_json& ballot : approvals) {
    if (!ballot.is_array()) SchemaError("each ballot must be a list of ids");
    std::vector<std::string> ids;
    for (const ordered_json& id : ballot) {
      ids.push_back(StringField(id, "approved project id"));
    }
    raw.approvals.push_back(std::move(ids));
  }
  ValidatedInstance validated = ValidateInstance(std::move(raw), mode);
  if (warnings != nullptr) {
    warnings->insert(warnings->end(), validated.warnings.begin(),
                     validated.warnings.end());
  }
  return std::move(validated.instance);
}

std::string EmitNative(const Instance& instance) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"format\": \"pbi/1\",\n";
  out << "  \"budget\": " << ordered_json(ToString(instance.budget())).dump()
      << ",\n";
  out << "  \"projects\": [";
  for (int p = 0; p < instance.num_projects(); ++p) {
    ordered_json entry;
    entry["id"] = instance.project(p).id;
    entry["cost"] = ToString(instance.cost(p));
    out << (p == 0 ? "\n" : ",\n") << "    " << entry.dump();
  }
  out << (instance.num_projects() == 0 ? "],\n" : "\n  ],\n");
  out << "  \"approvals\": [";
  for (int voter = 0; voter < instance.voter_count(); ++voter) {
    ordered_json ballot = ordered_json::array();
    for (int p : instance.approvals(voter)) {
      ballot.push_back(instance.project(p).id);
    }
    out << (voter == 0 ? "\n" : ",\n") << "    " << ballot.dump();
  }
  out << (instance.voter_count() == 0 ? "]\n" : "\n  ]\n");
  out << "}\n";
  return out.str();
}

const std::string& ReportHeader() {
  static const auto* header = new std::string(
      "instance_id,n,num_projects,b,c_min,c_max,k1,k2,sat_fn,rule,uw,uw_opt,"
      "ratio,greedy_bound,mes_bound_hi,mismatch_bound,ejr1_upper_bound,"
      "bound_holds,ejr1_satisfied");
  return *header;
}

std::string ReportCell(const Rational& value) {
  return ToString(value) + " (" + ToDecimal(value, 12) + ")";
}

std::string EmitReportCsv(const std::vector<ReportRecord>& records) {
  std::string out = ReportHeader() + "\n";
  for (const ReportRecord& r : records) {
    const std::string bound_holds =
        r.error ? "error"
                : (r.bound_holds ? (*r.bound_holds ? "true" : "false") : "na");
    const std::string ejr1 =
        r.error ? "error: " + *r.error : Ejr1Cell(r.ejr1);
    const std::vector<std::string> cells = {
        r.instance_id,
        std::to_string(r.n),
        std::to_string(r.num_projects),
        OptionalCell(r.b),
        OptionalCell(r.c_min),
        OptionalCell(r.c_max),
        OptionalCell(r.k1),
        OptionalCell(r.k2),
        r.sat_fn,
        r.rule,
        OptionalCell(r.uw),
        OptionalCell(r.uw_opt),
        OptionalCell(r.ratio),
        OptionalCell(r.greedy_bound),
        OptionalCell(r.mes_bound_hi),
        OptionalCell(r.mismatch_bound),
        OptionalCell(r.ejr1_upper_bound),
        bound_holds,
        ejr1,
    };
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out += ',';
      out += CsvEscape(cells[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace pbwelfare
