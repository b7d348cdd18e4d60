#ifndef EFLOWER_ANALYSIS_ENSEMBLE_HPP
#define EFLOWER_ANALYSIS_ENSEMBLE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include "eflower/analysis/classify.hpp"
#include "eflower/analysis/seeds.hpp"

namespace eflower::analysis {

struct ComponentFractions {
  std::size_t samples = 0;
  std::array<std::size_t, 4> counts{};  // indexed by OrbitLabel

  double fraction(OrbitLabel label) const {
    return samples == 0 ? 0.0 : static_cast<double>(counts[static_cast<std::size_t>(label)]) / static_cast<double>(samples);
  }
  double stderr_of(OrbitLabel label) const {
    const double p = fraction(label);
    return samples == 0 ? 0.0 : std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  }
};

/// Runs `fn(index)` for index in [0, count) on up to `workers` threads.
/// Each index is handled exactly once; results must be stored by index.
template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

/// Labels of `samples` orbits of length `bounces` started from the invariant
/// measure; sample i draws from a seed derived from (seed, i).
inline std::vector<OrbitClass> sample_classes(const dynamics::FlowerTable& table, std::size_t samples,
                                              std::size_t bounces, std::uint64_t seed, unsigned workers = 0) {
  std::vector<OrbitClass> classes(samples);
  parallel_for(samples, workers, [&](std::size_t i) {
    std::mt19937_64 rng(derive_seed(seed, i));
    const auto initial = sample_invariant_state(table, rng);
    classes[i] = classify_orbit(dynamics::trace_orbit(table, initial, bounces), table.core());
  });
  return classes;
}

inline ComponentFractions component_measure_fraction(const dynamics::FlowerTable& table, std::size_t samples,
                                                     std::size_t bounces, std::uint64_t seed = 1,
                                                     unsigned workers = 0) {
  if (samples < 100) throw Error(ErrorCode::invalid_parameter, "at least 100 samples required");
  ComponentFractions out;
  out.samples = samples;
  for (const auto& c : sample_classes(table, samples, bounces, seed, workers)) ++out.counts[static_cast<std::size_t>(c.label)];
  return out;
}

}  // namespace eflower::analysis

#endif  // EFLOWER_ANALYSIS_ENSEMBLE_HPP
