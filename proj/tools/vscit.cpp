// vscit: generate, benchmark and verify variable-strength covering arrays.
//
// Exit codes: 0 success / full coverage, 1 verification shortfall,
// 2 usage or parse error, 3 internal oracle failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vscit/error.hpp"
#include "vscit/fis_json.hpp"
#include "vscit/harness.hpp"
#include "vscit/model.hpp"
#include "vscit/pso.hpp"
#include "vscit/verify.hpp"

#ifndef VSCIT_PRESET_DIR
#define VSCIT_PRESET_DIR "presets"
#endif

namespace {

enum class LogLevel { off, info, trace };

LogLevel log_level() {
  const char* env = std::getenv("VSCIT_LOG");
  if (!env) return LogLevel::off;
  const std::string v(env);
  if (v == "info") return LogLevel::info;
  if (v == "trace") return LogLevel::trace;
  return LogLevel::off;
}

struct Options {
  std::string model;
  int strength = 0;
  std::vector<std::string> subs;
  std::string variant = "fpso";
  int swarm_size = 80;
  int iterations = 100;
  double c1 = 2.0;
  double c2 = 2.0;
  std::optional<double> w_max;
  int runs = 30;
  std::uint64_t seed = 1;
  std::string out;
  std::string log;
  std::string preset;
  std::string mf_config;
  unsigned jobs = 0;
  std::string suite_path;
  bool csv = false;
};

vscit::VscaConfig config_from(const Options& o) {
  vscit::VscaConfig cfg;
  cfg.strength = o.strength;
  for (const auto& s : o.subs) cfg.subs.push_back(vscit::parse_sub(s));
  return cfg;
}

vscit::FisConfig fis_from(const Options& o) {
  vscit::FisConfig fis = o.mf_config.empty() ? vscit::FisConfig{} : vscit::load_fis_config(o.mf_config);
  if (o.w_max) fis.w_max = *o.w_max;
  return fis;
}

vscit::SwarmParams params_from(const Options& o, const vscit::FisConfig& fis) {
  vscit::SwarmParams p;
  p.swarm_size = o.swarm_size;
  p.max_iterations = o.iterations;
  p.c1 = o.c1;
  p.c2 = o.c2;
  p.w_max = fis.w_max;
  p.w_min = fis.w_min;
  p.variant = vscit::parse_variant(o.variant);
  p.rng_seed = o.seed;
  p.validate();
  return p;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw vscit::ParseError("cannot write '" + path + "'");
  f << text;
}

int cmd_generate(const Options& o) {
  const auto model = vscit::parse_model(o.model);
  const auto validated = vscit::validate_config(model, config_from(o));
  for (const auto& w : validated.warnings) std::cerr << "warning: " << w << '\n';
  const auto fis = fis_from(o);
  const auto params = params_from(o, fis);
  const auto level = log_level();

  const auto result = vscit::generate_suite(model, validated.config, params, fis, true);

  std::ostringstream suite_text;
  vscit::write_suite(suite_text, result.suite);
  std::string log_text = vscit::log_header();
  for (const auto& rec : result.log) {
    const auto line = vscit::format_log_line(rec);
    log_text += line;
    if (level == LogLevel::trace) std::cerr << line;
  }

  if (o.out.empty()) {
    std::cout << suite_text.str();
  } else {
    write_text(o.out, suite_text.str());
  }
  const std::string log_path = !o.log.empty() ? o.log : (o.out.empty() ? std::string() : o.out + ".log");
  if (!log_path.empty()) write_text(log_path, log_text);

  const std::string summary = "size=" + std::to_string(result.suite.size()) + " seed=" + std::to_string(result.seed) +
                              " variant=" + vscit::to_string(params.variant);
  (o.out.empty() ? std::cerr : std::cout) << summary << '\n';
  if (level != LogLevel::off) std::cerr << "repairs=" << result.repairs << '\n';
  return 0;
}

std::string resolve_preset(const std::string& name) {
  if (std::filesystem::exists(name)) return name;
  const auto candidate = std::filesystem::path(VSCIT_PRESET_DIR) / (name + ".preset");
  if (std::filesystem::exists(candidate)) return candidate.string();
  throw vscit::ParseError("unknown preset '" + name + "'");
}

int cmd_benchmark(const Options& o) {
  std::vector<vscit::BenchmarkCase> cases;
  if (!o.preset.empty()) {
    cases = vscit::load_preset(resolve_preset(o.preset));
  } else {
    if (o.model.empty()) throw vscit::ParseError("benchmark needs --model/--t or --preset");
    const auto model = vscit::parse_model(o.model);
    auto cfg = config_from(o);
    vscit::validate_config(model, cfg);
    cases.push_back({vscit::render_model(model) + " " + vscit::render_config(cfg), model, cfg});
  }
  const auto fis = fis_from(o);
  const auto params = params_from(o, fis);
  const auto level = log_level();

  std::string csv = vscit::benchmark_csv_header();
  std::ostringstream summary;
  for (const auto& bench : cases) {
    if (level != LogLevel::off) std::cerr << "running " << bench.label << '\n';
    const auto campaign = vscit::run_campaign(bench, params, o.runs, o.seed, fis, o.jobs);
    csv += vscit::benchmark_csv_rows(campaign);
    summary << bench.label << " " << vscit::to_string(params.variant) << " best=" << campaign.stats.best
            << " mean=" << vscit::format_mean(campaign.stats.mean) << '\n';
  }
  if (o.out.empty()) {
    std::cout << csv;
    std::cerr << summary.str();
  } else {
    write_text(o.out, csv);
    std::cout << summary.str();
  }
  return 0;
}

int cmd_verify(const Options& o) {
  std::ifstream in(o.suite_path);
  if (!in) throw vscit::ParseError("cannot open suite '" + o.suite_path + "'");
  const auto suite = vscit::read_suite(in);
  const auto report = vscit::verify_suite(suite);
  std::cout << (o.csv ? vscit::render_report_csv(report) : vscit::render_report(report));
  return report.complete() ? 0 : 1;
}

void add_run_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--model", o.model, "Parameter levels, e.g. \"3^15\" or \"4^3 5^3 6^2\"");
  cmd->add_option("--t", o.strength, "Main interaction strength");
  cmd->add_option("--sub", o.subs, "Sub-configuration \"i,j,k:strength\" (repeatable)");
  cmd->add_option("--variant", o.variant, "fpso or cpso")->check(CLI::IsMember({"fpso", "cpso"}));
  cmd->add_option("--swarm-size", o.swarm_size, "Particles per swarm");
  cmd->add_option("--iterations", o.iterations, "Iterations per generated test");
  cmd->add_option("--c1", o.c1, "Cognitive coefficient");
  cmd->add_option("--c2", o.c2, "Social coefficient");
  cmd->add_option("--w-max", o.w_max, "Maximum inertia weight");
  cmd->add_option("--seed", o.seed, "RNG seed (benchmark: base seed, run r uses seed+r)");
  cmd->add_option("--out", o.out, "Output path");
  cmd->add_option("--mf-config", o.mf_config, "JSON membership-function overrides");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variable-strength covering array generation with a fuzzy-tuned particle swarm"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("generate", "Generate one suite");
  add_run_flags(gen, o);
  gen->add_option("--log", o.log, "Per-iteration log path (default <out>.log)");
  gen->get_option("--model")->required();
  gen->get_option("--t")->required();

  auto* bench = app.add_subcommand("benchmark", "Repeated seeded runs with best/mean summary");
  add_run_flags(bench, o);
  bench->add_option("--runs", o.runs, "Runs per configuration")->check(CLI::PositiveNumber);
  bench->add_option("--preset", o.preset, "Preset name (table1, table2, table3, exact) or file");
  bench->add_option("--jobs", o.jobs, "Worker threads (0 = hardware concurrency)");

  auto* ver = app.add_subcommand("verify", "Check a suite file for full coverage");
  ver->add_option("suite", o.suite_path, "Suite file")->required();
  ver->add_flag("--csv", o.csv, "Render the report as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*gen) return cmd_generate(o);
    if (*bench) return cmd_benchmark(o);
    if (*ver) return cmd_verify(o);
  } catch (const vscit::OracleError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const vscit::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const vscit::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
