#pragma once

// System-under-test model, variable-strength configuration and the test
// case / suite value types shared by the rest of the library.
//
// Parameter indices are 0-based everywhere, file formats included.

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "vscit/error.hpp"

namespace vscit {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' || s[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < s.size() && !(s[i] == ' ' || s[i] == '\t' || s[i] == '\n' || s[i] == '\r')) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

// Parses the whole of `s` as a decimal integer; false on any junk.
inline bool parse_int(std::string_view s, int& out) {
  s = trim(s);
  if (s.empty()) return false;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

}  // namespace detail

/// Number of values of each parameter; value indices of parameter i are 0..levels[i]-1.
class SutModel {
 public:
  SutModel() = default;

  explicit SutModel(std::vector<int> levels) : levels_(std::move(levels)) {
    if (levels_.empty()) throw ConfigError("model must have at least one parameter");
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      if (levels_[i] < 1) {
        throw ConfigError("parameter " + std::to_string(i) + " has " + std::to_string(levels_[i]) +
                          " levels; need at least 1");
      }
    }
  }

  [[nodiscard]] int num_params() const { return static_cast<int>(levels_.size()); }
  [[nodiscard]] int levels(int param) const { return levels_[static_cast<std::size_t>(param)]; }
  [[nodiscard]] const std::vector<int>& levels() const { return levels_; }

  friend bool operator==(const SutModel&, const SutModel&) = default;

 private:
  std::vector<int> levels_;
};

/// Parses exponent notation such as "4^3 5^3 6^2" or "5".
inline SutModel parse_model(std::string_view spec) {
  const auto terms = detail::split_ws(spec);
  if (terms.empty()) throw ParseError("empty model spec");
  std::vector<int> levels;
  for (const auto term : terms) {
    const auto caret = term.find('^');
    int value = 0;
    int count = 1;
    bool ok = detail::parse_int(term.substr(0, caret), value);
    if (ok && caret != std::string_view::npos) ok = detail::parse_int(term.substr(caret + 1), count);
    if (!ok) throw ParseError("malformed model term '" + std::string(term) + "'");
    if (value < 1) throw ParseError("model term '" + std::string(term) + "': level count must be >= 1");
    if (count < 1) throw ParseError("model term '" + std::string(term) + "': repeat count must be >= 1");
    levels.insert(levels.end(), static_cast<std::size_t>(count), value);
  }
  return SutModel(std::move(levels));
}

/// Compact exponent notation; runs of equal level counts collapse to "v^n".
inline std::string render_model(const SutModel& model) {
  std::string out;
  const auto& lv = model.levels();
  for (std::size_t i = 0; i < lv.size();) {
    std::size_t j = i;
    while (j < lv.size() && lv[j] == lv[i]) ++j;
    if (!out.empty()) out += ' ';
    out += std::to_string(lv[i]);
    if (j - i > 1) out += '^' + std::to_string(j - i);
    i = j;
  }
  return out;
}

struct SubConfig {
  std::vector<int> params;
  int strength = 0;

  friend bool operator==(const SubConfig&, const SubConfig&) = default;
};

/// Main strength t over all parameters plus optional higher-strength subsets.
struct VscaConfig {
  int strength = 0;
  std::vector<SubConfig> subs;

  friend bool operator==(const VscaConfig&, const VscaConfig&) = default;
};

/// Parses "i,j,k:s".
inline SubConfig parse_sub(std::string_view text) {
  const auto colon = text.rfind(':');
  if (colon == std::string_view::npos) throw ParseError("sub-config '" + std::string(text) + "' lacks ':<strength>'");
  SubConfig sub;
  if (!detail::parse_int(text.substr(colon + 1), sub.strength)) {
    throw ParseError("sub-config '" + std::string(text) + "': bad strength");
  }
  for (const auto idx : detail::split(text.substr(0, colon), ',')) {
    int p = 0;
    if (!detail::parse_int(idx, p)) throw ParseError("sub-config '" + std::string(text) + "': bad index '" + std::string(idx) + "'");
    sub.params.push_back(p);
  }
  return sub;
}

/// Parses "t=<int>; sub=<i,j,k>:<strength>; ...".
inline VscaConfig parse_config(std::string_view text) {
  VscaConfig cfg;
  bool have_t = false;
  for (auto part : detail::split(text, ';')) {
    part = detail::trim(part);
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string_view::npos) throw ParseError("config clause '" + std::string(part) + "' lacks '='");
    const auto key = detail::trim(part.substr(0, eq));
    const auto value = detail::trim(part.substr(eq + 1));
    if (key == "t") {
      if (!detail::parse_int(value, cfg.strength)) throw ParseError("bad strength '" + std::string(value) + "'");
      have_t = true;
    } else if (key == "sub") {
      cfg.subs.push_back(parse_sub(value));
    } else {
      throw ParseError("unknown config key '" + std::string(key) + "'");
    }
  }
  if (!have_t) throw ParseError("config text missing 't=<strength>'");
  return cfg;
}

inline std::string render_sub(const SubConfig& sub) {
  std::string out;
  for (std::size_t i = 0; i < sub.params.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(sub.params[i]);
  }
  return out + ':' + std::to_string(sub.strength);
}

inline std::string render_config(const VscaConfig& cfg) {
  std::string out = "t=" + std::to_string(cfg.strength);
  for (const auto& sub : cfg.subs) out += "; sub=" + render_sub(sub);
  return out;
}

struct ValidatedConfig {
  VscaConfig config;
  std::vector<std::string> warnings;
};

/// Checks `config` against `model`. Sub-configs whose strength does not
/// exceed the main strength are implied by the main level and only warn.
inline ValidatedConfig validate_config(const SutModel& model, const VscaConfig& config) {
  const int k = model.num_params();
  if (config.strength < 1 || config.strength > k) {
    throw ConfigError("main strength " + std::to_string(config.strength) + " outside [1, " + std::to_string(k) + "]");
  }
  ValidatedConfig out{config, {}};
  for (std::size_t s = 0; s < config.subs.size(); ++s) {
    const auto& sub = config.subs[s];
    const std::string where = "sub-config " + std::to_string(s) + " (" + render_sub(sub) + ")";
    const int size = static_cast<int>(sub.params.size());
    if (sub.strength < 1) throw ConfigError(where + ": strength must be positive");
    if (size > k) throw ConfigError(where + ": more parameters than the model has");
    if (sub.strength > size) throw ConfigError(where + ": strength exceeds the number of parameters");
    std::vector<int> sorted = sub.params;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (sorted[i] < 0 || sorted[i] >= k) throw ConfigError(where + ": index " + std::to_string(sorted[i]) + " out of range");
      if (i && sorted[i] == sorted[i - 1]) throw ConfigError(where + ": duplicate index " + std::to_string(sorted[i]));
    }
    if (sub.strength <= config.strength) {
      out.warnings.push_back(where + " is redundant: strength " + std::to_string(sub.strength) +
                             " is already implied by main strength " + std::to_string(config.strength));
    }
  }
  return out;
}

/// One row of the covering array.
struct TestCase {
  std::vector<int> values;

  friend bool operator==(const TestCase&, const TestCase&) = default;
};

inline bool is_valid_case(const SutModel& model, const TestCase& tc) {
  if (static_cast<int>(tc.values.size()) != model.num_params()) return false;
  for (int i = 0; i < model.num_params(); ++i) {
    const int v = tc.values[static_cast<std::size_t>(i)];
    if (v < 0 || v >= model.levels(i)) return false;
  }
  return true;
}

struct TestSuite {
  SutModel model;
  VscaConfig config;
  std::vector<TestCase> cases;

  [[nodiscard]] std::size_t size() const { return cases.size(); }
};

}  // namespace vscit
