#include <set>
#include <sstream>

#include "cli_helpers.hpp"
#include "gtest/gtest.h"
#include "oracles.hpp"
#include "vscit/verify.hpp"

namespace {

using clitest::run;
using clitest::slurp;
using clitest::spit;

std::size_t count_cases(const std::string& suite_text) {
  std::istringstream is(suite_text);
  return vscit::read_suite(is).cases.size();
}

TEST(CliGenerateTest, ExhaustiveStrengthThree) {
  clitest::TempDir dir;
  const auto suite = dir / "s.txt";
  const auto o = run("generate --model \"3^3\" --t 3 --variant fpso --seed 1 --out " + suite.string());
  ASSERT_EQ(o.exit_code, 0);
  EXPECT_EQ(o.out, "size=27 seed=1 variant=fpso\n");
  EXPECT_EQ(count_cases(slurp(suite)), 27u);
}

TEST(CliGenerateTest, BinaryPair) {
  const auto o = run("generate --model \"2^2\" --t 2");
  ASSERT_EQ(o.exit_code, 0);
  EXPECT_EQ(count_cases(o.out), 4u);
}

TEST(CliGenerateTest, DeterministicFiles) {
  clitest::TempDir dir;
  const auto a = dir / "a.txt";
  const auto b = dir / "b.txt";
  ASSERT_EQ(run("generate --model \"3^5\" --t 2 --seed 7 --out " + a.string()).exit_code, 0);
  ASSERT_EQ(run("generate --model \"3^5\" --t 2 --seed 7 --out " + b.string()).exit_code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(slurp(a.string() + ".log"), slurp(b.string() + ".log"));
}

TEST(CliGenerateTest, WritesIterationLog) {
  clitest::TempDir dir;
  const auto suite = dir / "s.txt";
  const auto log = dir / "run.log";
  ASSERT_EQ(run("generate --model \"3^6\" --t 2 --sub 0,1,2:3 --seed 3 --swarm-size 10 --iterations 20 --out " +
                suite.string() + " --log " + log.string())
                .exit_code,
            0);
  const auto text = slurp(log);
  EXPECT_EQ(text.rfind("test,iteration,ncf,d1,d2,nor_nubf,w_selection,w,gbest_fitness\n", 0), 0u);
  EXPECT_NE(text.find("undef"), std::string::npos);
  EXPECT_NE(slurp(suite).find("# config: t=2; sub=0,1,2:3"), std::string::npos);
}

TEST(CliGenerateTest, UsageErrorsExitTwo) {
  EXPECT_EQ(run("generate --model \"3^x\" --t 2").exit_code, 2);
  EXPECT_EQ(run("generate --model \"3^3\" --t 5").exit_code, 2);
  EXPECT_EQ(run("generate --model \"3^3\" --t 2 --sub 0,9:2").exit_code, 2);
  EXPECT_EQ(run("generate --model \"3^3\" --t 2 --variant dpso").exit_code, 2);
  EXPECT_EQ(run("generate --t 2").exit_code, 2);
  EXPECT_EQ(run("").exit_code, 2);
}

TEST(CliGenerateTest, MfConfigOverride) {
  clitest::TempDir dir;
  const auto mf = dir / "mf.json";
  spit(mf, R"({"w_max": 0.8, "output": {"low": [0, 0, 40]}})");
  EXPECT_EQ(run("generate --model \"2^3\" --t 2 --mf-config " + mf.string()).exit_code, 0);
  spit(mf, "{not json");
  EXPECT_EQ(run("generate --model \"2^3\" --t 2 --mf-config " + mf.string()).exit_code, 2);
}

TEST(CliVerifyTest, ClosedLoopAndMutation) {
  clitest::TempDir dir;
  const auto suite = dir / "s.txt";
  ASSERT_EQ(run("generate --model \"3^5\" --t 2 --seed 4 --out " + suite.string()).exit_code, 0);
  const auto ok = run("verify " + suite.string());
  EXPECT_EQ(ok.exit_code, 0);
  EXPECT_NE(ok.out.find("100.00%"), std::string::npos);

  // Drop the last case; the report must list exactly the tuples only it covered.
  std::istringstream is(slurp(suite));
  const auto full = vscit::read_suite(is);
  auto cut = full;
  cut.cases.pop_back();
  std::ostringstream os;
  vscit::write_suite(os, cut);
  const auto cut_path = dir / "cut.txt";
  spit(cut_path, os.str());

  std::vector<std::vector<int>> rows;
  for (const auto& tc : cut.cases) rows.push_back(tc.values);
  const auto expected = oracle::uncovered_after(oracle::universe(std::vector<int>(5, 3), 2, {}), rows);
  ASSERT_FALSE(expected.empty());

  const auto bad = run("verify " + cut_path.string());
  EXPECT_EQ(bad.exit_code, 1);
  std::set<std::string> listed;
  std::istringstream lines(bad.out);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.rfind("missing ", 0) == 0) listed.insert(line);
  }
  std::set<std::string> want;
  for (const auto& [params, values] : expected) {
    std::string s = "missing ";
    for (std::size_t j = 0; j < params.size(); ++j) s += (j ? "," : "") + std::to_string(params[j]);
    s += ": ";
    for (std::size_t j = 0; j < values.size(); ++j) s += (j ? "-" : "") + std::to_string(values[j]);
    want.insert(s);
  }
  EXPECT_EQ(listed, want);
}

TEST(CliVerifyTest, HeaderOnlyAndErrors) {
  clitest::TempDir dir;
  const auto empty = dir / "empty.txt";
  spit(empty, "# model: 3^5\n# config: t=2\n");
  const auto o = run("verify " + empty.string());
  EXPECT_EQ(o.exit_code, 1);
  EXPECT_NE(o.out.find("covered=0 "), std::string::npos);
  const auto csv = run("verify --csv " + empty.string());
  EXPECT_EQ(csv.out.rfind("kind,combination,tuple,required,covered,coverage_pct\nsummary,,,90,0,0.00\n", 0), 0u);

  EXPECT_EQ(run("verify " + (dir / "absent.txt").string()).exit_code, 2);
  const auto junk = dir / "junk.txt";
  spit(junk, "# model: 3^5\n# config: t=2\n0,1,2\n");
  EXPECT_EQ(run("verify " + junk.string()).exit_code, 2);
}

TEST(CliBenchmarkTest, CsvRowsAndSummary) {
  clitest::TempDir dir;
  const auto csv = dir / "b.csv";
  const auto o = run("benchmark --model \"3^4\" --t 2 --runs 3 --seed 10 --swarm-size 10 --iterations 10 --out " +
                     csv.string());
  ASSERT_EQ(o.exit_code, 0);
  const auto text = slurp(csv);
  std::istringstream is(text);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(is, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 1u + 3u + 2u);
  EXPECT_EQ(lines[0], "config_label,variant,seed,size");
  EXPECT_EQ(lines[1].rfind("3^4 t=2,fpso,10,", 0), 0u);
  EXPECT_EQ(lines[4].rfind("3^4 t=2,fpso,best,", 0), 0u);
  EXPECT_EQ(lines[5].rfind("3^4 t=2,fpso,mean,", 0), 0u);
}

TEST(CliBenchmarkTest, SingleRunSummaryEqualsSize) {
  const auto o = run("benchmark --model \"2^3\" --t 2 --runs 1 --seed 5 --variant cpso");
  ASSERT_EQ(o.exit_code, 0);
  std::istringstream is(o.out);
  std::string header, row, best, mean;
  std::getline(is, header);
  std::getline(is, row);
  std::getline(is, best);
  std::getline(is, mean);
  const auto size = row.substr(row.rfind(',') + 1);
  EXPECT_EQ(best, "2^3 t=2,cpso,best," + size);
  EXPECT_EQ(mean, "2^3 t=2,cpso,mean," + size + ".00");
}

TEST(CliBenchmarkTest, PresetByName) {
  const auto o = run("benchmark --preset exact --runs 2 --swarm-size 5 --iterations 5");
  ASSERT_EQ(o.exit_code, 0);
  EXPECT_NE(o.out.find("\"CA(3,3^3)\",fpso,best,27"), std::string::npos);
  EXPECT_NE(o.out.find("\"CA(3,4^3)\",fpso,mean,64.00"), std::string::npos);
  EXPECT_EQ(run("benchmark --preset nosuch --runs 1").exit_code, 2);
}

TEST(CliLoggingTest, TraceGoesToStderrOnly) {
  const auto quiet = run("generate --model \"2^3\" --t 2 --seed 2");
  const auto traced = run("generate --model \"2^3\" --t 2 --seed 2", "VSCIT_LOG=trace");
  EXPECT_EQ(quiet.exit_code, 0);
  EXPECT_EQ(quiet.out, traced.out);
}

}  // namespace
