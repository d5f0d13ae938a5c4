#pragma once

// Brute-force coverage oracle and suite statistics.
//
// Nothing here touches TupleStore: the required universe is re-enumerated
// with its own recursive combination walk and a dense hit table per
// combination, so a bug in the store cannot hide itself.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "vscit/error.hpp"
#include "vscit/model.hpp"

namespace vscit {

struct MissingTuple {
  std::vector<int> params;
  std::vector<int> values;
};

struct CoverageReport {
  std::uint64_t required = 0;
  std::uint64_t covered = 0;
  std::vector<MissingTuple> missing;

  [[nodiscard]] double coverage_pct() const {
    return required == 0 ? 100.0 : static_cast<double>(covered) / static_cast<double>(required) * 100.0;
  }
  [[nodiscard]] bool complete() const { return missing.empty(); }
};

namespace detail {

inline void subsets_of(const std::vector<int>& pool, int size, std::size_t from, std::vector<int>& current,
                       std::map<std::vector<int>, bool>& out) {
  if (static_cast<int>(current.size()) == size) {
    out.emplace(current, true);
    return;
  }
  for (std::size_t i = from; i < pool.size(); ++i) {
    current.push_back(pool[i]);
    subsets_of(pool, size, i + 1, current, out);
    current.pop_back();
  }
}

}  // namespace detail

/// Every parameter subset that must be covered, deduplicated, sorted.
inline std::vector<std::vector<int>> required_combinations(const SutModel& model, const VscaConfig& config) {
  std::map<std::vector<int>, bool> found;
  std::vector<int> current;
  std::vector<int> everything(static_cast<std::size_t>(model.num_params()));
  std::iota(everything.begin(), everything.end(), 0);
  detail::subsets_of(everything, config.strength, 0, current, found);
  for (const auto& sub : config.subs) {
    auto pool = sub.params;
    std::sort(pool.begin(), pool.end());
    detail::subsets_of(pool, sub.strength, 0, current, found);
  }
  std::vector<std::vector<int>> out;
  for (const auto& [combo, _] : found) out.push_back(combo);
  return out;
}

/// Checks every required (combination, value tuple) pair against the suite.
inline CoverageReport verify_suite(const TestSuite& suite) {
  validate_config(suite.model, suite.config);
  CoverageReport report;
  for (const auto& combo : required_combinations(suite.model, suite.config)) {
    // Row-major table, last parameter of the combination varies fastest.
    std::size_t cells = 1;
    for (const int p : combo) cells *= static_cast<std::size_t>(suite.model.levels(p));
    std::vector<char> hit(cells, 0);
    for (const auto& tc : suite.cases) {
      std::size_t cell = 0;
      for (const int p : combo) {
        cell = cell * static_cast<std::size_t>(suite.model.levels(p)) + static_cast<std::size_t>(tc.values[static_cast<std::size_t>(p)]);
      }
      hit[cell] = 1;
    }
    report.required += cells;
    for (std::size_t cell = 0; cell < cells; ++cell) {
      if (hit[cell]) {
        ++report.covered;
        continue;
      }
      MissingTuple m{combo, std::vector<int>(combo.size())};
      std::size_t rest = cell;
      for (std::size_t j = combo.size(); j-- > 0;) {
        const auto lv = static_cast<std::size_t>(suite.model.levels(combo[j]));
        m.values[j] = static_cast<int>(rest % lv);
        rest /= lv;
      }
      report.missing.push_back(std::move(m));
    }
  }
  return report;
}

inline std::string render_report(const CoverageReport& report) {
  std::ostringstream os;
  os << "required=" << report.required << " covered=" << report.covered << " missing=" << report.missing.size()
     << " coverage=" << std::fixed << std::setprecision(2) << report.coverage_pct() << "%\n";
  for (const auto& m : report.missing) {
    os << "missing ";
    for (std::size_t j = 0; j < m.params.size(); ++j) os << (j ? "," : "") << m.params[j];
    os << ": ";
    for (std::size_t j = 0; j < m.values.size(); ++j) os << (j ? "-" : "") << m.values[j];
    os << '\n';
  }
  return os.str();
}

/// Header row, one summary row, then one row per missing tuple.
inline std::string render_report_csv(const CoverageReport& report) {
  std::ostringstream os;
  os << "kind,combination,tuple,required,covered,coverage_pct\n";
  os << "summary,,," << report.required << ',' << report.covered << ',' << std::fixed << std::setprecision(2)
     << report.coverage_pct() << '\n';
  for (const auto& m : report.missing) {
    os << "missing,";
    for (std::size_t j = 0; j < m.params.size(); ++j) os << (j ? " " : "") << m.params[j];
    os << ',';
    for (std::size_t j = 0; j < m.values.size(); ++j) os << (j ? "-" : "") << m.values[j];
    os << ",,,\n";
  }
  return os.str();
}

struct SuiteStats {
  std::size_t best = 0;
  double mean = 0.0;
  std::vector<std::size_t> sizes;
};

/// Best (minimum) and mean size, mean rounded to 2 decimals.
inline SuiteStats suite_stats(const std::vector<std::size_t>& sizes) {
  if (sizes.empty()) throw std::invalid_argument("suite_stats needs at least one run");
  SuiteStats s;
  s.sizes = sizes;
  s.best = *std::min_element(sizes.begin(), sizes.end());
  const double sum = std::accumulate(sizes.begin(), sizes.end(), 0.0);
  s.mean = std::round(sum / static_cast<double>(sizes.size()) * 100.0) / 100.0;
  return s;
}

inline std::string format_mean(double mean) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << mean;
  return os.str();
}

// Suite file:
//   # model: <model spec>
//   # config: <config text>
//   0,1,2,...
inline void write_suite(std::ostream& os, const TestSuite& suite) {
  os << "# model: " << render_model(suite.model) << '\n';
  os << "# config: " << render_config(suite.config) << '\n';
  for (const auto& tc : suite.cases) {
    for (std::size_t i = 0; i < tc.values.size(); ++i) os << (i ? "," : "") << tc.values[i];
    os << '\n';
  }
}

inline TestSuite read_suite(std::istream& is) {
  std::string line;
  std::optional<SutModel> model;
  std::optional<VscaConfig> config;
  std::vector<TestCase> cases;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto text = detail::trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      const auto body = detail::trim(text.substr(1));
      if (body.rfind("model:", 0) == 0) {
        model = parse_model(body.substr(6));
      } else if (body.rfind("config:", 0) == 0) {
        config = parse_config(body.substr(7));
      }
      continue;
    }
    if (!model || !config) throw ParseError("line " + std::to_string(line_no) + ": test case before model/config header");
    TestCase tc;
    for (const auto field : detail::split(text, ',')) {
      int v = 0;
      if (!detail::parse_int(field, v)) throw ParseError("line " + std::to_string(line_no) + ": bad value '" + std::string(field) + "'");
      tc.values.push_back(v);
    }
    if (!is_valid_case(*model, tc)) throw ParseError("line " + std::to_string(line_no) + ": case does not fit the model");
    cases.push_back(std::move(tc));
  }
  if (!model) throw ParseError("suite file lacks '# model:' header");
  if (!config) throw ParseError("suite file lacks '# config:' header");
  try {
    validate_config(*model, *config);
  } catch (const ConfigError& e) {
    throw ParseError(std::string("suite header: ") + e.what());
  }
  return TestSuite{*model, *config, std::move(cases)};
}

}  // namespace vscit
