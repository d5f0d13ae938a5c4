#pragma once

// Seeded multi-run campaigns, preset tables and the text formats the command
// line tool writes (benchmark CSV, per-iteration log).

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "vscit/error.hpp"
#include "vscit/fis.hpp"
#include "vscit/model.hpp"
#include "vscit/pso.hpp"
#include "vscit/verify.hpp"

namespace vscit {

/// One row of a benchmark table.
struct BenchmarkCase {
  std::string label;
  SutModel model;
  VscaConfig config;
};

/// Preset file, one case per line: "<label> | <model spec> | <config text>".
/// Blank lines and '#' comments are ignored.
inline std::vector<BenchmarkCase> parse_preset(std::istream& is) {
  std::vector<BenchmarkCase> out;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto fields = detail::split(text, '|');
    if (fields.size() != 3) throw ParseError("preset line " + std::to_string(line_no) + ": expected 'label | model | config'");
    BenchmarkCase bc{std::string(detail::trim(fields[0])), parse_model(fields[1]), parse_config(fields[2])};
    try {
      validate_config(bc.model, bc.config);
    } catch (const ConfigError& e) {
      throw ParseError("preset line " + std::to_string(line_no) + ": " + e.what());
    }
    out.push_back(std::move(bc));
  }
  if (out.empty()) throw ParseError("preset has no cases");
  return out;
}

inline std::vector<BenchmarkCase> load_preset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open preset '" + path + "'");
  return parse_preset(in);
}

struct CampaignResult {
  BenchmarkCase bench;
  Variant variant = Variant::fpso;
  std::vector<std::uint64_t> seeds;
  std::vector<std::size_t> sizes;
  SuiteStats stats;
};

/// `runs` independent runs with seeds base_seed + r, spread over `jobs`
/// threads. Results are stored by run index, so output order never depends
/// on scheduling.
inline CampaignResult run_campaign(const BenchmarkCase& bench, SwarmParams params, int runs, std::uint64_t base_seed,
                                   const FisConfig& fis = {}, unsigned jobs = 0) {
  if (runs < 1) throw ConfigError("runs must be at least 1");
  params.validate();
  validate_config(bench.model, bench.config);
  if (jobs == 0) jobs = std::max(1U, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(runs));

  CampaignResult result{bench, params.variant, {}, std::vector<std::size_t>(static_cast<std::size_t>(runs)), {}};
  for (int r = 0; r < runs; ++r) result.seeds.push_back(base_seed + static_cast<std::uint64_t>(r));

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int r = next++; r < runs; r = next++) {
      try {
        SwarmParams p = params;
        p.rng_seed = result.seeds[static_cast<std::size_t>(r)];
        result.sizes[static_cast<std::size_t>(r)] = generate_suite(bench.model, bench.config, p, fis).suite.size();
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  result.stats = suite_stats(result.sizes);
  return result;
}

/// RFC 4180 quoting for fields that need it.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

inline std::string benchmark_csv_header() { return "config_label,variant,seed,size\n"; }

/// Per-run rows then two summary rows whose seed column reads "best" and "mean".
inline std::string benchmark_csv_rows(const CampaignResult& c) {
  std::ostringstream os;
  const auto label = csv_field(c.bench.label);
  const auto variant = to_string(c.variant);
  for (std::size_t r = 0; r < c.sizes.size(); ++r) os << label << ',' << variant << ',' << c.seeds[r] << ',' << c.sizes[r] << '\n';
  os << label << ',' << variant << ",best," << c.stats.best << '\n';
  os << label << ',' << variant << ",mean," << format_mean(c.stats.mean) << '\n';
  return os.str();
}

inline std::string log_header() { return "test,iteration,ncf,d1,d2,nor_nubf,w_selection,w,gbest_fitness\n"; }

inline std::string format_log_line(const IterationRecord& rec) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4);
  os << rec.test << ',' << rec.iteration << ',' << rec.ncf << ',' << rec.d1 << ',' << rec.d2 << ',';
  if (rec.nor_nubf) {
    os << *rec.nor_nubf;
  } else {
    os << "undef";
  }
  os << ',' << rec.w_selection << ',' << rec.w << ',' << rec.gbest_fitness << '\n';
  return os.str();
}

}  // namespace vscit
