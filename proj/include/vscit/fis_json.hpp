#pragma once

// Loads fuzzy-controller overrides from JSON. Every key is optional:
//
//   {
//     "w_max": 0.9, "w_min": 0.1,
//     "inputs": { "ncf": { "low": [0, 0, 50], "medium": [25, 50, 75], "high": [50, 100, 100] },
//                 "d1": {...}, "d2": {...} },
//     "output": { "low": [...], "medium": [...], "high": [...] }
//   }

#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "vscit/error.hpp"
#include "vscit/fis.hpp"

namespace vscit {

namespace detail {

inline void read_triangle(const nlohmann::json& j, const char* name, Triangle& tri) {
  if (!j.contains(name)) return;
  const auto& arr = j.at(name);
  if (!arr.is_array() || arr.size() != 3) throw ParseError(std::string("membership '") + name + "' needs [left, peak, right]");
  tri = Triangle{arr[0].get<double>(), arr[1].get<double>(), arr[2].get<double>()};
  if (!tri.valid()) throw ParseError(std::string("membership '") + name + "' feet do not bracket the peak");
}

inline void read_label_set(const nlohmann::json& j, LabelSet& set) {
  read_triangle(j, "low", set.low);
  read_triangle(j, "medium", set.medium);
  read_triangle(j, "high", set.high);
}

}  // namespace detail

inline FisConfig parse_fis_config(const nlohmann::json& j, FisConfig cfg = {}) {
  try {
    if (j.contains("w_max")) cfg.w_max = j.at("w_max").get<double>();
    if (j.contains("w_min")) cfg.w_min = j.at("w_min").get<double>();
    if (j.contains("inputs")) {
      const auto& in = j.at("inputs");
      if (in.contains("ncf")) detail::read_label_set(in.at("ncf"), cfg.ncf);
      if (in.contains("d1")) detail::read_label_set(in.at("d1"), cfg.d1);
      if (in.contains("d2")) detail::read_label_set(in.at("d2"), cfg.d2);
    }
    if (j.contains("output")) detail::read_label_set(j.at("output"), cfg.output);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("mf config: ") + e.what());
  }
  if (!(cfg.w_min <= cfg.w_max)) throw ParseError("mf config: w_min exceeds w_max");
  return cfg;
}

inline FisConfig load_fis_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open mf config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("mf config '" + path + "': " + e.what());
  }
  return parse_fis_config(j);
}

}  // namespace vscit
