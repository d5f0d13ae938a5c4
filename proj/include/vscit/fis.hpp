#pragma once

// Mamdani fuzzy controller for the PSO inertia weight.
//
// Inputs (all percentages on [0, 100]):
//   ncf - normalized current fitness of the particle
//   d1  - distance of the particle to its personal best
//   d2  - distance of the particle to the global best
// Output: w_selection on [0, 100], mapped to w = w_selection / 100 * w_max.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vscit/model.hpp"

namespace vscit {

/// Triangle on the [0, 100] universe. A foot equal to the peak gives a
/// shoulder (degree 1 at that edge).
struct Triangle {
  double left = 0.0;
  double peak = 0.0;
  double right = 0.0;

  [[nodiscard]] double degree(double x) const {
    if (x < left || x > right) return 0.0;
    if (x == peak) return 1.0;
    if (x < peak) return (x - left) / (peak - left);
    return (right - x) / (right - peak);
  }

  [[nodiscard]] bool valid() const { return left <= peak && peak <= right; }
};

enum class Label { low, medium, high, not_low };

struct LabelSet {
  Triangle low{0.0, 0.0, 50.0};
  Triangle medium{25.0, 50.0, 75.0};
  Triangle high{50.0, 100.0, 100.0};

  [[nodiscard]] double degree(Label label, double x) const {
    switch (label) {
      case Label::low: return low.degree(x);
      case Label::medium: return medium.degree(x);
      case Label::high: return high.degree(x);
      case Label::not_low: return 1.0 - low.degree(x);
    }
    return 0.0;
  }
};

enum class Input { ncf, d1, d2 };

struct FuzzyRule {
  struct Term {
    Input input;
    Label label;
  };
  std::vector<Term> antecedent;  // conjunction
  Label consequent;              // low, medium or high of the output
};

/// The four inertia-weight rules:
///   1. ncf low,     d1 low,  d2 low      -> w low  (near convergence)
///   2. ncf not-low, d1 low,  d2 low      -> w high (stuck in a local optimum)
///   3. ncf medium,  d1 low,  d2 not-low  -> w high (exploring)
///   4. ncf high,    d1 high, d2 high     -> w high (exploring)
inline std::vector<FuzzyRule> default_rules() {
  using T = FuzzyRule::Term;
  return {
      {{T{Input::ncf, Label::low}, T{Input::d1, Label::low}, T{Input::d2, Label::low}}, Label::low},
      {{T{Input::ncf, Label::not_low}, T{Input::d1, Label::low}, T{Input::d2, Label::low}}, Label::high},
      {{T{Input::ncf, Label::medium}, T{Input::d1, Label::low}, T{Input::d2, Label::not_low}}, Label::high},
      {{T{Input::ncf, Label::high}, T{Input::d1, Label::high}, T{Input::d2, Label::high}}, Label::high},
  };
}

struct FisConfig {
  LabelSet ncf;
  LabelSet d1;
  LabelSet d2;
  LabelSet output;
  double w_max = 0.9;
  double w_min = 0.1;
  std::vector<FuzzyRule> rules = default_rules();

  [[nodiscard]] const LabelSet& input(Input in) const {
    switch (in) {
      case Input::ncf: return ncf;
      case Input::d1: return d1;
      case Input::d2: return d2;
    }
    return ncf;
  }
};

/// Normalized current fitness as a percentage of the [min, max] range. A degenerate range
/// (max == min) counts as fully fit.
inline double compute_ncf(long current, long min_fitness, long max_fitness) {
  if (current < min_fitness || current > max_fitness) {
    throw std::invalid_argument("fitness " + std::to_string(current) + " outside [" + std::to_string(min_fitness) +
                                ", " + std::to_string(max_fitness) + "]");
  }
  if (max_fitness == min_fitness) return 100.0;
  return static_cast<double>(current - min_fitness) / static_cast<double>(max_fitness - min_fitness) * 100.0;
}

/// Length of the diagonal of the discrete search box.
inline double max_distance(const SutModel& model) {
  double sq = 0.0;
  for (const int v : model.levels()) sq += static_cast<double>(v - 1) * static_cast<double>(v - 1);
  return std::sqrt(sq);
}

/// Euclidean distance between x and ref as a percentage of max_dist, clamped to [0, 100].
inline double compute_distance_pct(std::span<const double> x, std::span<const double> ref, double max_dist) {
  if (x.size() != ref.size()) throw std::invalid_argument("distance operands differ in length");
  if (!(max_dist > 0.0)) throw std::invalid_argument("max distance must be positive");
  double sq = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sq += (x[i] - ref[i]) * (x[i] - ref[i]);
  return std::clamp(std::sqrt(sq) / max_dist * 100.0, 0.0, 100.0);
}

/// Stagnation index (max - k) / k over iterations without best-fitness change.
/// std::nullopt when k is zero.
inline std::optional<double> compute_nor_nubf(long nubf_k, long nubf_max) {
  if (nubf_k < 0 || nubf_k > nubf_max) {
    throw std::invalid_argument("unchanged-best count " + std::to_string(nubf_k) + " outside [0, " +
                                std::to_string(nubf_max) + "]");
  }
  if (nubf_k == 0) return std::nullopt;
  return static_cast<double>(nubf_max - nubf_k) / static_cast<double>(nubf_k);
}

struct Inference {
  double w_selection = 0.0;
  double w = 0.0;
  bool fired = false;  // false: no rule fired, w held from the previous call
};

class FisController {
 public:
  static constexpr int kSamples = 1001;

  explicit FisController(FisConfig config = {}) : config_(std::move(config)), last_w_(config_.w_max) {
    for (const auto* set : {&config_.ncf, &config_.d1, &config_.d2, &config_.output}) {
      for (const auto& tri : {set->low, set->medium, set->high}) {
        if (!tri.valid()) throw std::invalid_argument("membership function feet must bracket the peak");
      }
    }
    if (!(config_.w_min <= config_.w_max)) throw std::invalid_argument("w_min exceeds w_max");
    for (const auto& rule : config_.rules) {
      if (rule.consequent == Label::not_low) throw std::invalid_argument("rule consequent cannot be not-low");
    }
    for (std::size_t label = 0; label < 3; ++label) {
      for (int j = 0; j < kSamples; ++j) {
        samples_[label][static_cast<std::size_t>(j)] =
            config_.output.degree(static_cast<Label>(label), sample_point(j));
        points_[static_cast<std::size_t>(j)] = sample_point(j);
      }
    }
  }

  [[nodiscard]] const FisConfig& config() const { return config_; }
  [[nodiscard]] double last_w() const { return last_w_; }
  void reset() { last_w_ = config_.w_max; }

  /// Full Mamdani pass given an explicit previous w; does not touch state.
  [[nodiscard]] Inference evaluate(double ncf, double d1, double d2, double previous_w) const {
    for (const double x : {ncf, d1, d2}) {
      if (!(x >= 0.0 && x <= 100.0)) throw std::invalid_argument("fuzzy input outside [0, 100]");
    }
    const std::array<double, 3> crisp{ncf, d1, d2};

    // Clip level of each output label: max over rules (min over terms).
    std::array<double, 3> clip{0.0, 0.0, 0.0};
    for (const auto& rule : config_.rules) {
      double strength = 1.0;
      for (const auto& term : rule.antecedent) {
        strength = std::min(strength, config_.input(term.input).degree(term.label, crisp[static_cast<std::size_t>(term.input)]));
      }
      auto& slot = clip[static_cast<std::size_t>(rule.consequent)];
      slot = std::max(slot, strength);
    }
    if (clip[0] <= 0.0 && clip[1] <= 0.0 && clip[2] <= 0.0) return {w_selection_of(previous_w), previous_w, false};

    // Max-aggregate the clipped output sets, skipping labels that did not fire.
    std::array<double, kSamples> aggregate{};
    for (std::size_t label = 0; label < 3; ++label) {
      if (clip[label] <= 0.0) continue;
      const auto& mf = samples_[label];
      for (std::size_t j = 0; j < kSamples; ++j) aggregate[j] = std::max(aggregate[j], std::min(clip[label], mf[j]));
    }
    double area = 0.0;
    double moment = 0.0;
    for (std::size_t j = 0; j < kSamples; ++j) {
      area += aggregate[j];
      moment += aggregate[j] * points_[j];
    }
    if (area <= 0.0) return {w_selection_of(previous_w), previous_w, false};
    const double w_selection = moment / area;
    return {w_selection, weight_from_selection(w_selection), true};
  }

  /// Stateful variant; remembers the emitted w for the no-fire fallback.
  Inference infer(double ncf, double d1, double d2) {
    const auto result = evaluate(ncf, d1, d2, last_w_);
    last_w_ = result.w;
    return result;
  }

  double infer_w(double ncf, double d1, double d2) { return infer(ncf, d1, d2).w; }

  /// w = w_selection / 100 * w_max, clamped to [w_min, w_max].
  [[nodiscard]] double weight_from_selection(double w_selection) const {
    return std::clamp(w_selection / 100.0 * config_.w_max, config_.w_min, config_.w_max);
  }

 private:
  static double sample_point(int j) { return 100.0 * j / (kSamples - 1); }
  [[nodiscard]] double w_selection_of(double w) const { return w / config_.w_max * 100.0; }

  FisConfig config_;
  double last_w_;
  std::array<std::array<double, kSamples>, 3> samples_{};
  std::array<double, kSamples> points_{};
};

}  // namespace vscit
