#include <gtest/gtest.h>

#include <json.hpp>

#include "edgecalc/report.hpp"

using namespace edgecalc;

namespace {

Report sample_report() {
  Report rep;
  rep.command = "demo";
  rep.config = {{"seed", "42"}, {"samples", "10"}};
  rep.check("b_check", 1e-13, 1e-12);
  rep.check("a_check", 5.0, 1.0, "too big");
  rep.add({"c_check", CheckStatus::warning, 0.5, 0.0, "note, with comma"});
  rep.add({"d_check", CheckStatus::degenerate, 0.0, 0.0, ""});
  rep.sort_records();
  rep.wall_seconds = 0.25;
  return rep;
}

TEST(Report, SummaryCountsMatchRecords) {
  const Report rep = sample_report();
  const ReportSummary s = rep.summary();
  EXPECT_EQ(s.passed, 1);
  EXPECT_EQ(s.failed, 1);
  EXPECT_EQ(s.warnings, 1);
  EXPECT_EQ(s.degenerate, 1);
  EXPECT_FALSE(rep.all_passed());
}

TEST(Report, RecordsAreSortedByName) {
  const Report rep = sample_report();
  ASSERT_EQ(rep.records.size(), 4u);
  EXPECT_EQ(rep.records[0].name, "a_check");
  EXPECT_EQ(rep.records[3].name, "d_check");
}

TEST(Report, CheckAboveSemantics) {
  Report rep;
  rep.check_above("pos", 1e-3, 1e-12);
  rep.check_above("zero", 0.0, 0.0);
  EXPECT_EQ(rep.records[0].status, CheckStatus::pass);
  EXPECT_EQ(rep.records[1].status, CheckStatus::fail);
}

TEST(Report, JsonShape) {
  const Report rep = sample_report();
  const auto j = nlohmann::json::parse(rep.to_json());
  EXPECT_EQ(j["command"], "demo");
  EXPECT_EQ(j["config"]["seed"], "42");
  ASSERT_EQ(j["records"].size(), 4u);
  EXPECT_EQ(j["records"][0]["check"], "a_check");
  EXPECT_EQ(j["records"][0]["status"], "fail");
  EXPECT_EQ(j["summary"]["fail"], 1);
  EXPECT_TRUE(j.contains("wall_time_seconds"));
}

TEST(Report, CsvSchemaAndEscaping) {
  const Report rep = sample_report();
  const std::string csv = rep.to_csv();
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    const auto nl = csv.find('\n', pos);
    lines.push_back(csv.substr(pos, nl - pos));
    pos = nl + 1;
  }
  ASSERT_EQ(lines.size(), 5u);  // header + 4 records, no wall-time row
  EXPECT_EQ(lines[0], "command,check,status,value,tolerance,detail");
  EXPECT_NE(lines[1].find("a_check,fail,5,1,too big"), std::string::npos);
  // comma inside detail forces quoting
  EXPECT_NE(lines[3].find("\"note, with comma\""), std::string::npos);
}

}  // namespace
