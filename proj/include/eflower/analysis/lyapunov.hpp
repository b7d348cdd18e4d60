#ifndef EFLOWER_ANALYSIS_LYAPUNOV_HPP
#define EFLOWER_ANALYSIS_LYAPUNOV_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "eflower/dynamics/orbit.hpp"
#include "eflower/dynamics/tangent.hpp"

namespace eflower::analysis {

struct LyapunovEstimate {
  double lambda = 0.0;  // per collision
  std::size_t bounces = 0;
  std::vector<double> convergence;  // partial estimates at evenly spaced checkpoints
  double stderr_ = 0.0;             // bootstrap error over contiguous segment means
  bool complete = true;
  dynamics::Termination termination = dynamics::Termination::completed;
};

/// Standard error of the mean of `values` by resampling with replacement.
inline double bootstrap_stderr(const std::vector<double>& values, std::size_t resamples, std::uint64_t seed) {
  if (values.size() < 2 || resamples < 2) return 0.0;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
  std::vector<double> means(resamples);
  for (auto& m : means) {
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) sum += values[pick(rng)];
    m = sum / static_cast<double>(values.size());
  }
  double mean = 0.0;
  for (double m : means) mean += m;
  mean /= static_cast<double>(resamples);
  double var = 0.0;
  for (double m : means) var += (m - mean) * (m - mean);
  return std::sqrt(var / static_cast<double>(resamples - 1));
}

/// Largest Lyapunov exponent of the collision map along one orbit, from the
/// renormalized growth of a Jacobi field.
inline LyapunovEstimate lyapunov_exponent(const dynamics::FlowerTable& table, const dynamics::PhaseState& initial,
                                          std::size_t bounces, std::size_t checkpoints = 20,
                                          std::size_t segments = 20, std::uint64_t bootstrap_seed = 1) {
  if (bounces < 1000) throw Error(ErrorCode::invalid_parameter, "at least 1000 bounces required");
  if (checkpoints == 0 || segments < 2) throw Error(ErrorCode::invalid_parameter, "need checkpoints >= 1 and segments >= 2");
  LyapunovEstimate est;
  Vec2 v = normalized(Vec2{1.0, 1.0});
  dynamics::PhaseState state = initial;
  const std::size_t seg_len = bounces / segments;
  std::vector<double> seg_sums;
  double total = 0.0, seg = 0.0;
  std::size_t next_checkpoint = 1;
  for (std::size_t k = 1; k <= bounces; ++k) {
    const dynamics::Step step = dynamics::billiard_map(table, state);
    if (step.status != dynamics::Outcome::ok) {
      est.complete = false;
      est.termination = dynamics::termination_of(step.status);
      break;
    }
    const auto frame =
        dynamics::tangent_map_step(dynamics::wall_curvature(step.curvature), step.state.phi, step.collision.tau);
    const Vec2 w = frame * v;
    const double growth = norm(w);
    const double lg = std::log(growth);
    total += lg;
    seg += lg;
    v = w / growth;
    state = step.state;
    est.bounces = k;
    if (seg_len > 0 && k % seg_len == 0 && seg_sums.size() < segments) {
      seg_sums.push_back(seg / static_cast<double>(seg_len));
      seg = 0.0;
    }
    while (next_checkpoint <= checkpoints && k * checkpoints >= next_checkpoint * bounces) {
      est.convergence.push_back(total / static_cast<double>(k));
      ++next_checkpoint;
    }
  }
  est.lambda = est.bounces > 0 ? total / static_cast<double>(est.bounces) : 0.0;
  if (seg_sums.size() >= 2) est.stderr_ = bootstrap_stderr(seg_sums, 2000, bootstrap_seed);
  return est;
}

}  // namespace eflower::analysis

#endif  // EFLOWER_ANALYSIS_LYAPUNOV_HPP
