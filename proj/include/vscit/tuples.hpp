#pragma once

// Parameter-combination generation and the keyed store of uncovered value
// tuples that the generator's fitness function counts against.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "vscit/error.hpp"
#include "vscit/model.hpp"

namespace vscit {

/// Strictly increasing parameter indices.
struct ParamCombination {
  std::vector<int> indices;

  [[nodiscard]] std::size_t size() const { return indices.size(); }
  friend bool operator==(const ParamCombination&, const ParamCombination&) = default;
  friend auto operator<=>(const ParamCombination&, const ParamCombination&) = default;
};

/// All t-subsets of {0..k-1} in lexicographic order.
///
/// Iterative: slot j of the stack holds the next candidate for position j of
/// the combination, so the stack never grows past t entries.
inline std::vector<ParamCombination> generate_param_combinations(int k, int t) {
  if (t < 1 || t > k) {
    throw std::invalid_argument("combination strength " + std::to_string(t) + " outside [1, " + std::to_string(k) + "]");
  }
  std::vector<ParamCombination> out;
  std::vector<int> comb(static_cast<std::size_t>(t));
  std::vector<int> stack;
  stack.reserve(static_cast<std::size_t>(t) + 1);
  stack.push_back(0);
  while (!stack.empty()) {
    auto i = stack.size() - 1;
    int v = stack.back();
    stack.pop_back();
    while (v < k) {
      comb[i] = v;
      ++i;
      ++v;
      stack.push_back(v);
      if (i == static_cast<std::size_t>(t)) {
        out.push_back(ParamCombination{comb});
        break;
      }
    }
  }
  return out;
}

/// Uncovered value tuples for every required parameter combination.
///
/// A tuple is packed into a mixed-radix integer over the combination's level
/// counts. Entries are kept sorted by combination and an entry is dropped as
/// soon as its last tuple is covered.
class TupleStore {
 public:
  struct Entry {
    ParamCombination combo;
    std::vector<std::uint64_t> radix;  // place value of each position
    std::unordered_set<std::uint64_t> uncovered;

    [[nodiscard]] std::uint64_t pack(std::span<const int> test_case) const {
      std::uint64_t key = 0;
      for (std::size_t j = 0; j < combo.indices.size(); ++j) {
        key += radix[j] * static_cast<std::uint64_t>(test_case[static_cast<std::size_t>(combo.indices[j])]);
      }
      return key;
    }

    /// Value tuple aligned with combo.indices.
    [[nodiscard]] std::vector<int> unpack(std::uint64_t key) const {
      std::vector<int> values(combo.indices.size());
      for (std::size_t j = combo.indices.size(); j-- > 0;) {
        values[j] = static_cast<int>(key / radix[j]);
        key %= radix[j];
      }
      return values;
    }
  };

  TupleStore() = default;

  /// Full tuple universe for `config`: all main-strength combinations over
  /// every parameter plus each sub-configuration's combinations, unioned by key.
  TupleStore(const SutModel& model, const VscaConfig& config) : model_(model) {
    validate_config(model, config);
    add_level(all_params(model.num_params()), config.strength);
    for (const auto& sub : config.subs) {
      auto params = sub.params;
      std::sort(params.begin(), params.end());
      add_level(params, sub.strength);
    }
    initial_total_ = remaining_;
  }

  [[nodiscard]] const SutModel& model() const { return model_; }
  [[nodiscard]] std::uint64_t initial_total() const { return initial_total_; }
  [[nodiscard]] std::uint64_t remaining_count() const { return remaining_; }
  [[nodiscard]] std::size_t num_entries() const { return entries_.size(); }
  [[nodiscard]] bool empty() const { return entries_.empty(); }
  [[nodiscard]] const std::vector<Entry>& entries() const { return entries_; }

  /// Number of entries whose uncovered set contains the case's projection.
  [[nodiscard]] int coverage_count(std::span<const int> test_case) const {
    int count = 0;
    for (const auto& e : entries_) count += static_cast<int>(e.uncovered.contains(e.pack(test_case)));
    return count;
  }
  [[nodiscard]] int coverage_count(const TestCase& tc) const { return coverage_count(std::span<const int>(tc.values)); }

  /// Deletes every tuple the case covers; returns how many were deleted.
  std::uint64_t remove_covered(std::span<const int> test_case) {
    std::uint64_t removed = 0;
    for (auto& e : entries_) removed += e.uncovered.erase(e.pack(test_case));
    std::erase_if(entries_, [](const Entry& e) { return e.uncovered.empty(); });
    remaining_ -= removed;
    return removed;
  }
  std::uint64_t remove_covered(const TestCase& tc) { return remove_covered(std::span<const int>(tc.values)); }

  /// Debug dump, one line per entry: "i,j: 0-1 2-2 ...", tuples in lexicographic order.
  [[nodiscard]] std::string dump() const {
    std::string out;
    for (const auto& e : entries_) {
      for (std::size_t j = 0; j < e.combo.indices.size(); ++j) {
        if (j) out += ',';
        out += std::to_string(e.combo.indices[j]);
      }
      out += ':';
      std::vector<std::vector<int>> tuples;
      for (const auto key : e.uncovered) tuples.push_back(e.unpack(key));
      std::sort(tuples.begin(), tuples.end());
      for (const auto& values : tuples) {
        out += ' ';
        for (std::size_t j = 0; j < values.size(); ++j) {
          if (j) out += '-';
          out += std::to_string(values[j]);
        }
      }
      out += '\n';
    }
    return out;
  }

 private:
  static std::vector<int> all_params(int k) {
    std::vector<int> p(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) p[static_cast<std::size_t>(i)] = i;
    return p;
  }

  // `params` sorted ascending, so mapped combinations stay strictly increasing.
  void add_level(const std::vector<int>& params, int strength) {
    for (const auto& local : generate_param_combinations(static_cast<int>(params.size()), strength)) {
      ParamCombination combo;
      for (const int j : local.indices) combo.indices.push_back(params[static_cast<std::size_t>(j)]);
      Entry& entry = find_or_insert(combo);
      if (entry.radix.empty()) {
        std::uint64_t place = 1;
        for (const int p : combo.indices) {
          entry.radix.push_back(place);
          const auto lv = static_cast<std::uint64_t>(model_.levels(p));
          if (place > std::numeric_limits<std::uint64_t>::max() / lv) {
            throw ConfigError("value-tuple space of a combination exceeds 64 bits");
          }
          place *= lv;
        }
        entry.uncovered.reserve(place);
        for (std::uint64_t key = 0; key < place; ++key) entry.uncovered.insert(key);
        remaining_ += place;
      }
      // A combination already present carries its full tuple product; union is a no-op.
    }
  }

  Entry& find_or_insert(const ParamCombination& combo) {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), combo,
                               [](const Entry& e, const ParamCombination& c) { return e.combo < c; });
    if (it == entries_.end() || it->combo != combo) it = entries_.insert(it, Entry{combo, {}, {}});
    return *it;
  }

  SutModel model_;
  std::vector<Entry> entries_;
  std::uint64_t initial_total_ = 0;
  std::uint64_t remaining_ = 0;
};

inline TupleStore build_tuple_store(const SutModel& model, const VscaConfig& config) { return TupleStore(model, config); }

}  // namespace vscit
