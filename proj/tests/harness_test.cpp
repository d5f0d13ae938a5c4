#include "vscit/harness.hpp"

#include <sstream>

#include "gtest/gtest.h"
#include "vscit/fis_json.hpp"

namespace vscit {
namespace {

TEST(PresetTest, ParsesLines) {
  std::istringstream is(
      "# comment\n"
      "\n"
      "phi | 3^4 | t=2\n"
      "CA(3,3^3) | 3^4 | t=2; sub=0,1,2:3\n");
  const auto cases = parse_preset(is);
  ASSERT_EQ(cases.size(), 2u);
  EXPECT_EQ(cases[0].label, "phi");
  EXPECT_EQ(cases[1].label, "CA(3,3^3)");
  EXPECT_EQ(cases[1].config.subs.size(), 1u);
}

TEST(PresetTest, RejectsBadLines) {
  std::istringstream missing_field("phi | 3^4\n");
  EXPECT_THROW(parse_preset(missing_field), ParseError);
  std::istringstream bad_config("phi | 3^4 | t=9\n");
  EXPECT_THROW(parse_preset(bad_config), ParseError);
  std::istringstream empty("# nothing\n");
  EXPECT_THROW(parse_preset(empty), ParseError);
}

TEST(PresetTest, ShippedPresetsLoad) {
  const std::string dir = VSCIT_PRESET_DIR;
  EXPECT_EQ(load_preset(dir + "/table1.preset").size(), 12u);
  EXPECT_EQ(load_preset(dir + "/table2.preset").size(), 7u);
  EXPECT_EQ(load_preset(dir + "/table3.preset").size(), 7u);
  const auto exact = load_preset(dir + "/exact.preset");
  ASSERT_EQ(exact.size(), 2u);
  EXPECT_EQ(exact[1].model, parse_model("4^3"));
}

TEST(CsvTest, QuotesWhenNeeded) {
  EXPECT_EQ(csv_field("phi"), "phi");
  EXPECT_EQ(csv_field("CA(3,3^3)"), "\"CA(3,3^3)\"");
  EXPECT_EQ(csv_field("a\"b"), "\"a\"\"b\"");
}

TEST(CampaignTest, SeedsAndStats) {
  const BenchmarkCase bench{"pairs", parse_model("3^4"), VscaConfig{2, {}}};
  SwarmParams params;
  params.swarm_size = 10;
  params.max_iterations = 15;
  const auto c = run_campaign(bench, params, 4, 100, {}, 1);
  EXPECT_EQ(c.seeds, (std::vector<std::uint64_t>{100, 101, 102, 103}));
  ASSERT_EQ(c.sizes.size(), 4u);
  for (std::size_t r = 0; r < 4; ++r) {
    SwarmParams p = params;
    p.rng_seed = c.seeds[r];
    EXPECT_EQ(c.sizes[r], generate_suite(bench.model, bench.config, p).suite.size());
  }
  EXPECT_EQ(c.stats.best, *std::min_element(c.sizes.begin(), c.sizes.end()));
}

TEST(CampaignTest, ThreadCountDoesNotChangeResults) {
  const BenchmarkCase bench{"vs", parse_model("3^5"), parse_config("t=2; sub=0,1,2:3")};
  SwarmParams params;
  params.swarm_size = 10;
  params.max_iterations = 10;
  const auto serial = run_campaign(bench, params, 6, 7, {}, 1);
  const auto threaded = run_campaign(bench, params, 6, 7, {}, 3);
  EXPECT_EQ(serial.sizes, threaded.sizes);
  EXPECT_EQ(benchmark_csv_rows(serial), benchmark_csv_rows(threaded));
}

TEST(CampaignTest, RejectsZeroRuns) {
  const BenchmarkCase bench{"x", parse_model("2^2"), VscaConfig{2, {}}};
  EXPECT_THROW(run_campaign(bench, SwarmParams{}, 0, 1), ConfigError);
}

TEST(CampaignTest, CsvRowsAndSummary) {
  CampaignResult c;
  c.bench.label = "CA(3,3^3)";
  c.variant = Variant::cpso;
  c.seeds = {1, 2, 3};
  c.sizes = {18, 19, 21};
  c.stats = suite_stats(c.sizes);
  EXPECT_EQ(benchmark_csv_rows(c),
            "\"CA(3,3^3)\",cpso,1,18\n"
            "\"CA(3,3^3)\",cpso,2,19\n"
            "\"CA(3,3^3)\",cpso,3,21\n"
            "\"CA(3,3^3)\",cpso,best,18\n"
            "\"CA(3,3^3)\",cpso,mean,19.33\n");
}

TEST(LogTest, LineFormat) {
  IterationRecord rec{2, 5, 9, 50.0, 12.5, 25.0, std::nullopt, 60.0, 0.54};
  EXPECT_EQ(format_log_line(rec), "2,5,50.0000,12.5000,25.0000,undef,60.0000,0.5400,9\n");
  rec.nor_nubf = 99.0;
  EXPECT_EQ(format_log_line(rec), "2,5,50.0000,12.5000,25.0000,99.0000,60.0000,0.5400,9\n");
}

TEST(FisJsonTest, OverridesSelectedFields) {
  const auto j = nlohmann::json::parse(R"({"w_max": 0.8, "inputs": {"d1": {"low": [0, 0, 40]}},
                                           "output": {"high": [60, 100, 100]}})");
  const auto cfg = parse_fis_config(j);
  EXPECT_DOUBLE_EQ(cfg.w_max, 0.8);
  EXPECT_DOUBLE_EQ(cfg.w_min, 0.1);
  EXPECT_DOUBLE_EQ(cfg.d1.low.right, 40.0);
  EXPECT_DOUBLE_EQ(cfg.d2.low.right, 50.0);
  EXPECT_DOUBLE_EQ(cfg.output.high.left, 60.0);
  FisController fis(cfg);
  EXPECT_LE(fis.infer_w(100, 100, 100), 0.8);
}

TEST(FisJsonTest, RejectsMalformed) {
  EXPECT_THROW(parse_fis_config(nlohmann::json::parse(R"({"inputs": {"ncf": {"low": [0, 10]}}})")), ParseError);
  EXPECT_THROW(parse_fis_config(nlohmann::json::parse(R"({"output": {"low": [20, 10, 30]}})")), ParseError);
  EXPECT_THROW(parse_fis_config(nlohmann::json::parse(R"({"w_max": "high"})")), ParseError);
  EXPECT_THROW(parse_fis_config(nlohmann::json::parse(R"({"w_min": 0.95})")), ParseError);
  EXPECT_THROW(load_fis_config("/nonexistent/mf.json"), ParseError);
}

}  // namespace
}  // namespace vscit
