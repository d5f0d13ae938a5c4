#pragma once

// Particle swarm test generator: one test case per swarm run, appended to the
// suite until every required tuple is covered.
//
// Positions are continuous relaxations of test cases. Component i lives in
// [0, v_i - 1] and is discretized by rounding to the nearest level (ties
// toward zero).

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "vscit/error.hpp"
#include "vscit/fis.hpp"
#include "vscit/model.hpp"
#include "vscit/tuples.hpp"
#include "vscit/verify.hpp"

namespace vscit {

enum class Variant { fpso, cpso };

inline std::string to_string(Variant v) { return v == Variant::fpso ? "fpso" : "cpso"; }

inline Variant parse_variant(std::string_view text) {
  if (text == "fpso") return Variant::fpso;
  if (text == "cpso") return Variant::cpso;
  throw ParseError("unknown variant '" + std::string(text) + "' (expected fpso or cpso)");
}

struct SwarmParams {
  int swarm_size = 80;
  int max_iterations = 100;
  double c1 = 2.0;
  double c2 = 2.0;
  double w_max = 0.9;
  double w_min = 0.1;
  Variant variant = Variant::fpso;
  std::uint64_t rng_seed = 0;

  void validate() const {
    if (swarm_size < 2) throw ConfigError("swarm size must be at least 2");
    if (max_iterations < 1) throw ConfigError("iteration count must be at least 1");
  }
};

using Rng = std::mt19937_64;

struct Particle {
  std::vector<double> position;
  std::vector<double> velocity;
  std::vector<double> pbest_position;
  int fitness = 0;
  int pbest_fitness = 0;
};

/// Swarm means for one iteration of one test's search.
struct IterationRecord {
  int test = 0;
  int iteration = 0;
  int gbest_fitness = 0;
  double ncf = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  std::optional<double> nor_nubf;
  double w_selection = 0.0;
  double w = 0.0;
};

struct RunResult {
  TestSuite suite;
  std::vector<IterationRecord> log;
  std::uint64_t seed = 0;
  int repairs = 0;  // tests replaced because the swarm found nothing new
};

/// Nearest level, ties toward zero, clamped into [0, levels - 1].
inline int discretize_component(double x, int levels) {
  const double r = std::ceil(x - 0.5);
  return static_cast<int>(std::clamp(r, 0.0, static_cast<double>(levels - 1)));
}

inline TestCase discretize(std::span<const double> position, const SutModel& model) {
  TestCase tc;
  tc.values.resize(position.size());
  for (std::size_t i = 0; i < position.size(); ++i) {
    tc.values[i] = discretize_component(position[i], model.levels(static_cast<int>(i)));
  }
  return tc;
}

inline int fitness(std::span<const double> position, const TupleStore& store) {
  return store.coverage_count(discretize(position, store.model()));
}

/// w*v + c1*r1*(pbest - x) + c2*r2*(gbest - x), with one r1 and one r2 per
/// call, each component clamped to [-(v_i - 1), v_i - 1].
inline std::vector<double> velocity_update(const Particle& p, std::span<const double> gbest, double w, double c1,
                                           double c2, double r1, double r2, const SutModel& model) {
  std::vector<double> out(p.velocity.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double limit = model.levels(static_cast<int>(i)) - 1;
    const double v = w * p.velocity[i] + c1 * r1 * (p.pbest_position[i] - p.position[i]) +
                     c2 * r2 * (gbest[i] - p.position[i]);
    out[i] = std::clamp(v, -limit, limit);
  }
  return out;
}

inline std::vector<double> velocity_update(const Particle& p, std::span<const double> gbest, double w, double c1,
                                           double c2, Rng& rng, const SutModel& model) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r1 = unit(rng);
  const double r2 = unit(rng);
  return velocity_update(p, gbest, w, c1, c2, r1, r2, model);
}

inline std::vector<double> position_update(const Particle& p, const SutModel& model) {
  std::vector<double> out(p.position.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::clamp(p.position[i] + p.velocity[i], 0.0, static_cast<double>(model.levels(static_cast<int>(i)) - 1));
  }
  return out;
}

/// Linearly decreasing inertia from w_max (first iteration) to w_min (last).
inline double linear_inertia(const SwarmParams& params, int iteration) {
  if (params.max_iterations <= 1) return params.w_max;
  const double frac = static_cast<double>(iteration) / (params.max_iterations - 1);
  return params.w_max - (params.w_max - params.w_min) * frac;
}

/// Case built around the smallest uncovered tuple of the first remaining
/// entry; other parameters random. Always covers at least one tuple.
inline TestCase repair_case(const TupleStore& store, Rng& rng) {
  if (store.empty()) throw StateError("repair requested on an empty tuple store");
  const auto& model = store.model();
  TestCase tc;
  tc.values.resize(static_cast<std::size_t>(model.num_params()));
  for (int i = 0; i < model.num_params(); ++i) {
    tc.values[static_cast<std::size_t>(i)] = std::uniform_int_distribution<int>(0, model.levels(i) - 1)(rng);
  }
  const auto& entry = store.entries().front();
  const auto key = *std::min_element(entry.uncovered.begin(), entry.uncovered.end());
  const auto values = entry.unpack(key);
  for (std::size_t j = 0; j < values.size(); ++j) tc.values[static_cast<std::size_t>(entry.combo.indices[j])] = values[j];
  return tc;
}

struct OneTestResult {
  TestCase test_case;
  int gain = 0;
  bool repaired = false;
};

/// Runs one swarm search against the current store and returns the best case found.
inline OneTestResult generate_one_test(const TupleStore& store, const SwarmParams& params, FisController& controller,
                                       Rng& rng, std::vector<IterationRecord>* log = nullptr, int test_index = 0) {
  if (store.empty()) throw StateError("no uncovered tuples left to generate a test for");
  params.validate();
  const auto& model = store.model();
  const auto k = static_cast<std::size_t>(model.num_params());
  const double max_dist = max_distance(model);
  const int ceiling = static_cast<int>(store.num_entries());
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  controller.reset();

  std::vector<Particle> swarm(static_cast<std::size_t>(params.swarm_size));
  for (auto& p : swarm) {
    p.position.resize(k);
    for (std::size_t i = 0; i < k; ++i) p.position[i] = unit(rng) * (model.levels(static_cast<int>(i)) - 1);
    p.velocity.assign(k, 0.0);
    p.pbest_position = p.position;
    p.fitness = fitness(p.position, store);
    p.pbest_fitness = p.fitness;
  }
  std::size_t best = 0;
  for (std::size_t s = 1; s < swarm.size(); ++s) {
    if (swarm[s].pbest_fitness > swarm[best].pbest_fitness) best = s;
  }
  std::vector<double> gbest = swarm[best].pbest_position;
  int gbest_fitness = swarm[best].pbest_fitness;

  auto pct_distance = [&](const std::vector<double>& a, const std::vector<double>& b) {
    return max_dist > 0.0 ? compute_distance_pct(a, b, max_dist) : 0.0;
  };

  int unchanged = 0;
  for (int iter = 0; iter < params.max_iterations && gbest_fitness < ceiling; ++iter) {
    IterationRecord rec{test_index, iter, 0, 0.0, 0.0, 0.0, std::nullopt, 0.0, 0.0};
    const int gbest_before = gbest_fitness;
    for (auto& p : swarm) {
      const double ncf = compute_ncf(p.fitness, 0, ceiling);
      const double d1 = pct_distance(p.position, p.pbest_position);
      const double d2 = pct_distance(p.position, gbest);
      double w = 0.0;
      double w_selection = 0.0;
      if (params.variant == Variant::fpso) {
        const auto inference = controller.infer(ncf, d1, d2);
        w = inference.w;
        w_selection = inference.w_selection;
      } else {
        w = linear_inertia(params, iter);
        w_selection = w / params.w_max * 100.0;
      }
      p.velocity = velocity_update(p, gbest, w, params.c1, params.c2, rng, model);
      p.position = position_update(p, model);
      p.fitness = fitness(p.position, store);
      if (p.fitness > p.pbest_fitness) {
        p.pbest_fitness = p.fitness;
        p.pbest_position = p.position;
        if (p.pbest_fitness > gbest_fitness) {
          gbest_fitness = p.pbest_fitness;
          gbest = p.pbest_position;
        }
      }
      rec.ncf += ncf;
      rec.d1 += d1;
      rec.d2 += d2;
      rec.w += w;
      rec.w_selection += w_selection;
    }
    unchanged = gbest_fitness > gbest_before ? 0 : unchanged + 1;
    if (log) {
      const double n = static_cast<double>(swarm.size());
      rec.ncf /= n;
      rec.d1 /= n;
      rec.d2 /= n;
      rec.w /= n;
      rec.w_selection /= n;
      rec.gbest_fitness = gbest_fitness;
      rec.nor_nubf = compute_nor_nubf(unchanged, params.max_iterations);
      log->push_back(rec);
    }
  }

  OneTestResult out{discretize(gbest, model), gbest_fitness, false};
  if (out.gain == 0) {
    out.test_case = repair_case(store, rng);
    out.gain = store.coverage_count(out.test_case);
    out.repaired = true;
  }
  return out;
}

inline FisConfig fis_config_for(const SwarmParams& params, FisConfig base = {}) {
  base.w_max = params.w_max;
  base.w_min = params.w_min;
  return base;
}

/// Builds a complete suite, one swarm-optimized test at a time, and checks it
/// against the independent coverage oracle before returning.
inline RunResult generate_suite(const SutModel& model, const VscaConfig& config, const SwarmParams& params,
                                const FisConfig& fis = {}, bool keep_log = false) {
  params.validate();
  TupleStore store(model, config);
  FisController controller(fis_config_for(params, fis));
  Rng rng(params.rng_seed);

  RunResult result;
  result.seed = params.rng_seed;
  result.suite = TestSuite{model, config, {}};
  while (!store.empty()) {
    auto one = generate_one_test(store, params, controller, rng, keep_log ? &result.log : nullptr,
                                 static_cast<int>(result.suite.cases.size()));
    const auto before = store.remaining_count();
    const auto removed = store.remove_covered(one.test_case);
    if (removed == 0 || store.remaining_count() != before - removed) {
      throw OracleError("accepted test made no progress");
    }
    result.repairs += one.repaired ? 1 : 0;
    result.suite.cases.push_back(std::move(one.test_case));
  }

  const auto report = verify_suite(result.suite);
  if (!report.complete()) {
    throw OracleError("generated suite misses " + std::to_string(report.missing.size()) + " of " +
                      std::to_string(report.required) + " required tuples");
  }
  return result;
}

}  // namespace vscit
