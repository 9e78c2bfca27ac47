#include <gtest/gtest.h>

#include "dezawl/report.hpp"

using namespace dezawl;

namespace {

std::vector<std::string> claim_names(const VerificationReport& r) {
  std::vector<std::string> out;
  for (const auto& c : r.claims) out.push_back(c.name);
  return out;
}

}  // namespace

TEST(ExpectedRank, Formula) {
  EXPECT_EQ(expected_wl_rank(3), 24u);
  EXPECT_EQ(expected_wl_rank(4), 20u);
  EXPECT_EQ(expected_wl_rank(5), 40u);
  EXPECT_EQ(expected_wl_rank(6), 28u);
}

TEST(Report, OddKPasses) {
  const auto r = build_report(5);
  for (const auto& c : r.claims) EXPECT_TRUE(c.pass) << c.name << ": " << c.detail;
  EXPECT_EQ(claim_names(r), (std::vector<std::string>{"connection_set", "square_identity", "strictly_deza", "wl_rank",
                                                      "closure_structure", "closure_trace", "divisible_design",
                                                      "integral_spectrum", "grid_comparison"}));
  EXPECT_EQ(r.wl_rank_graph, 40u);
  EXPECT_EQ(r.wl_rank_sring, 40u);
  EXPECT_FALSE(r.wreath.has_value());
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.first_failure(), nullptr);
}

TEST(Report, EvenKPassesWithWreath) {
  const auto r = build_report(6);
  EXPECT_TRUE(r.pass()) << (r.first_failure() ? r.first_failure()->name : "");
  EXPECT_EQ(r.wl_rank_graph, 28u);
  ASSERT_TRUE(r.wreath.has_value());
  EXPECT_EQ(r.wreath->order_l, 6u);
  EXPECT_EQ(r.wreath->order_u, 24u);
  EXPECT_EQ(r.wreath->rank_quotient, 8u);
  EXPECT_EQ(r.wreath->rank_section, 4u);
  EXPECT_TRUE(r.wreath->rank_identity);
  EXPECT_EQ(r.grid.grid_wl_rank, 4u);
  EXPECT_FALSE(r.grid.wl1_distinguishes);
}

TEST(Report, DroppedEdgeFailsAtDeza) {
  const auto r = build_report(3, VerifyOptions{true, false});
  EXPECT_FALSE(r.pass());
  ASSERT_NE(r.first_failure(), nullptr);
  EXPECT_EQ(r.first_failure()->name, "strictly_deza");
  EXPECT_EQ(r.first_failure()->detail, "not regular");
}

TEST(Report, RejectsSmallK) { EXPECT_THROW(build_report(2), InvalidParameter); }

TEST(Report, JsonIsDeterministicWithoutTimings) {
  const auto a = to_json(build_report(4)).dump(2);
  const auto b = to_json(build_report(4)).dump(2);
  EXPECT_EQ(a, b);
  const auto j = nlohmann::json::parse(a);
  EXPECT_EQ(j["schema_version"], kReportSchemaVersion);
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_FALSE(j.contains("timings_ms"));
  EXPECT_EQ(j["deza"]["beta"], 6);
  EXPECT_EQ(j["ddg"]["alpha"], 6);
}

TEST(Report, TimingsAreOptIn) {
  const auto r = build_report(3, VerifyOptions{false, true});
  const auto j = to_json(r);
  ASSERT_TRUE(j.contains("timings_ms"));
  EXPECT_TRUE(j["timings_ms"].contains("wl2"));
  EXPECT_NE(summary(r).find("time wl2"), std::string::npos);
  EXPECT_NE(csv_header(true).find("wl2_ms"), std::string::npos);
}

TEST(Report, CsvRow) {
  const auto r = build_report(3);
  EXPECT_EQ(csv_row(r), "3,24,8,24,8,4,2,yes,24,24,8:1 4:1 2:9 -2:11 -4:2,(24; 8; 4; 2; 4; 6),pass");
  const auto header = csv_header(false);
  const auto row = csv_row(r);
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), std::count(header.begin(), header.end(), ','));
  EXPECT_NE(summary(r).find("[PASS] wl_rank"), std::string::npos);
}
