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

#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "pbwelfare/sweep.h"
#include "test_util.h"

namespace pbwelfare {
namespace {

using ::pbwelfare::testing::FixturePath;
using ::pbwelfare::testing::R;
using ::pbwelfare::testing::RunningExample;

std::string ReadFixture(const std::string& name) {
  std::ifstream in(FixturePath(name), std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

constexpr char kSmallPb[] =
    "META\nkey;value\nbudget;100\nvote_type;approval\n"
    "PROJECTS\nproject_id;cost\na1;12.50\na2;150\na3;40\n"
    "VOTES\nvoter_id;vote\n1;a1,a2\n2;a3\n3;\n";

TEST(ParsePabulibTest, FixtureMatchesRunningExample) {
  const PabulibParseResult result =
      ParsePabulib(ReadFixture("running_example.pb"));
  EXPECT_TRUE(result.warnings.empty());
  EXPECT_EQ(EmitNative(result.instance), EmitNative(RunningExample()));
}

TEST(ParsePabulibTest, KeepsMetadataAndExtraColumns) {
  const PabulibParseResult result =
      ParsePabulib(ReadFixture("running_example.pb"));
  const PabulibDocument& doc = result.document;
  EXPECT_EQ(doc.meta.at("country"), "Nowhere");
  EXPECT_EQ(doc.meta.at("rule"), "greedy");
  EXPECT_EQ(
      doc.project_columns,
      (std::vector<std::string>{"project_id", "cost", "name", "category"}));
  ASSERT_EQ(doc.projects.size(), 5U);
  EXPECT_EQ(doc.projects[2].at("name"), "Bike lanes; phase 1");
  EXPECT_EQ(doc.vote_columns,
            (std::vector<std::string>{"voter_id", "vote", "age"}));
  EXPECT_EQ(doc.votes[7].at("age"), "71");
}

TEST(ParsePabulibTest, DecimalCostsDropsAndEmptyVotes) {
  const PabulibParseResult result = ParsePabulib(kSmallPb);
  const Instance& instance = result.instance;
  EXPECT_EQ(instance.num_projects(), 2);
  EXPECT_EQ(instance.cost(instance.ProjectIndex("a1")), R("25/2"));
  ASSERT_EQ(result.warnings.size(), 1U);
  EXPECT_NE(result.warnings[0].find("a2"), std::string::npos);
  ASSERT_EQ(instance.voter_count(), 3);
  EXPECT_EQ(instance.approvals(0).size(), 1U);
  EXPECT_TRUE(instance.approvals(2).empty());
}

TEST(ParsePabulibTest, ToleratesBomAndCrlf) {
  std::string text = "\xEF\xBB\xBF";
  for (char c : std::string(kSmallPb)) {
    if (c == '\n') text += '\r';
    text += c;
  }
  EXPECT_EQ(EmitNative(ParsePabulib(text).instance),
            EmitNative(ParsePabulib(kSmallPb).instance));
}

TEST(ParsePabulibTest, Errors) {
  std::string ordinal = kSmallPb;
  ordinal.replace(ordinal.find("approval"), 8, "ordinal");
  EXPECT_THROW(ParsePabulib(ordinal), ValidationError);

  std::string no_votes = kSmallPb;
  no_votes.resize(no_votes.find("VOTES"));
  EXPECT_THROW(ParsePabulib(no_votes), ValidationError);

  std::string bad_cost = kSmallPb;
  bad_cost.replace(bad_cost.find("12.50"), 5, "twelve");
  EXPECT_THROW(ParsePabulib(bad_cost), ValidationError);

  std::string no_budget = kSmallPb;
  no_budget.replace(no_budget.find("budget;100\n"), 11, "");
  EXPECT_THROW(ParsePabulib(no_budget), ValidationError);
}

TEST(NativeTest, RoundTripIsByteIdentical) {
  const std::string text = ReadFixture("running_example.pbi");
  EXPECT_EQ(EmitNative(ParseNative(text)), text);
  EXPECT_EQ(EmitNative(RunningExample()), text);
}

TEST(NativeTest, FractionalBudget) {
  const Instance instance = ParseNative(
      R"({"budget":"13/2","projects":[{"id":"x","cost":"0.5"}],)"
      R"("approvals":[["x"],[]]})");
  EXPECT_EQ(instance.budget(), R("13/2"));
  EXPECT_EQ(instance.cost(0), R("1/2"));
  EXPECT_EQ(instance.voter_count(), 2);
}

TEST(NativeTest, StrictAndLenientValidation) {
  const std::string over =
      R"({"budget":"10","projects":[{"id":"x","cost":"11"},)"
      R"({"id":"y","cost":"1"}],"approvals":[["x","y"]]})";
  EXPECT_THROW(ParseNative(over), ValidationError);
  std::vector<std::string> warnings;
  const Instance lenient =
      ParseNative(over, ValidationMode::kLenient, &warnings);
  EXPECT_EQ(lenient.num_projects(), 1);
  EXPECT_FALSE(warnings.empty());
}

TEST(NativeTest, MalformedInput) {
  EXPECT_THROW(ParseNative("{"), ValidationError);
  EXPECT_THROW(ParseNative(R"({"budget":"1","projects":[{"cost":"1"}],)"
                           R"("approvals":[]})"),
               ValidationError);
  EXPECT_THROW(ParseNative(R"({"budget":"1","projects":[],"approvals":[],)"
                           R"("extra":1})"),
               ValidationError);
  EXPECT_THROW(ParseNative(R"({"format":"pbi/9","budget":"1",)"
                           R"("projects":[],"approvals":[]})"),
               ValidationError);
}

TEST(ReportCsvTest, CellFormat) {
  EXPECT_EQ(ReportCell(R("45/46")), "45/46 (0.978260869565)");
  EXPECT_EQ(ReportCell(R("-1/3")), "-1/3 (-0.333333333333)");
  EXPECT_EQ(ReportCell(R("7")), "7 (7.000000000000)");
}

TEST(ReportCsvTest, EmptyReportIsHeaderOnly) {
  EXPECT_EQ(EmitReportCsv({}), ReportHeader() + "\n");
  EXPECT_EQ(ReportHeader().rfind("instance_id,n,num_projects,b,", 0), 0U);
}

TEST(ReportCsvTest, ErrorRowsAndEscaping) {
  ReportRecord record;
  record.instance_id = "a,\"b\"";
  record.sat_fn = "cost";
  record.rule = "greedy";
  record.error = "bad input";
  const std::string csv = EmitReportCsv({record});
  const std::string row = csv.substr(ReportHeader().size() + 1);
  EXPECT_EQ(row.rfind("\"a,\"\"b\"\"\",0,0,", 0), 0U);
  EXPECT_NE(row.find(",error,error: bad input\n"), std::string::npos);
}

TEST(ReportCsvTest, MatchesGoldenSweep) {
  SweepConfig config;
  config.sources = {FileSource(FixturePath("running_example.pbi"))};
  config.fns = {LabeledFunctionFromName("cost"),
                LabeledFunctionFromName("card")};
  config.rules = {RuleKind::kGreedy, RuleKind::kMes, RuleKind::kMesGreedy,
                  RuleKind::kMaxSat};
  EXPECT_EQ(EmitReportCsv(RunSweep(config)),
            ReadFixture("running_example_sweep.csv"));
}

}  // namespace
}  // namespace pbwelfare
