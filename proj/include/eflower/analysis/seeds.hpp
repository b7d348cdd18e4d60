#ifndef EFLOWER_ANALYSIS_SEEDS_HPP
#define EFLOWER_ANALYSIS_SEEDS_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include "eflower/dynamics/billiard.hpp"

namespace eflower::analysis {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of task `index` under a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// Draws a state from the invariant measure of the collision map:
/// s uniform on the boundary and cos(phi) uniform on (-1, 1).
inline dynamics::PhaseState sample_invariant_state(const dynamics::FlowerTable& table, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    const double s = unit(rng) * table.boundary_length();
    const double phi = std::acos(2.0 * unit(rng) - 1.0);
    if (std::sin(phi) > 1e-9) return dynamics::make_state(table, s, phi);
  }
}

}  // namespace eflower::analysis

#endif  // EFLOWER_ANALYSIS_SEEDS_HPP
