#ifndef EFLOWER_ANALYSIS_PORTRAIT_HPP
#define EFLOWER_ANALYSIS_PORTRAIT_HPP

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

#include "eflower/analysis/classify.hpp"

namespace eflower::analysis {

struct PortraitPoint {
  double s = 0.0;
  double cos_phi = 0.0;
  OrbitLabel label = OrbitLabel::undetermined;
  std::size_t orbit_id = 0;
};

/// Poincare-section points of each orbit, tagged with the orbit's class.
/// Orbits that end early contribute what they reached.
inline std::vector<PortraitPoint> phase_portrait(const dynamics::FlowerTable& table,
                                                 const std::vector<dynamics::PhaseState>& initials,
                                                 std::size_t bounces) {
  std::vector<PortraitPoint> points;
  for (std::size_t id = 0; id < initials.size(); ++id) {
    const auto rec = dynamics::trace_orbit(table, initials[id], bounces);
    const OrbitLabel label = classify_orbit(rec, table.core()).label;
    for (const auto& st : rec.states) points.push_back({st.s, std::cos(st.phi), label, id});
  }
  return points;
}

inline void write_portrait_csv(std::ostream& os, const std::vector<PortraitPoint>& points) {
  os << "s,cos_phi,class_label,orbit_id\n";
  for (const auto& p : points) {
    os << dynamics::format_double(p.s) << ',' << dynamics::format_double(p.cos_phi) << ',' << to_string(p.label)
       << ',' << p.orbit_id << '\n';
  }
}

/// Occupancy of a G x G grid over (s / length, cos phi). Under the invariant
/// measure each cell of the sampled region expects the same count.
struct OccupancyScan {
  std::size_t grid = 0;
  std::size_t points = 0;
  std::size_t occupied = 0;
  std::size_t islands = 0;       // empty components enclosed by occupied cells
  std::size_t island_cells = 0;
  double chi_square = 0.0;       // over occupied cells, uniform expectation
  std::size_t dof = 0;

  // Resolution-qualified: no enclosed empty region at this grid size.
  bool no_island_at_resolution() const { return islands == 0; }
};

/// An island is a 4-connected set of empty cells (periodic in s) that does
/// not reach the rows cos phi = -1 or cos phi = 1.
inline OccupancyScan occupancy_scan(const std::vector<PortraitPoint>& points, double boundary_length,
                                    std::size_t grid) {
  if (grid == 0) throw Error(ErrorCode::invalid_parameter, "grid must be positive");
  OccupancyScan scan;
  scan.grid = grid;
  scan.points = points.size();
  const std::size_t g = grid;
  std::vector<std::size_t> counts(g * g, 0);  // index i * g + j: i along s, j along cos phi
  const auto cell = [&](double u) {
    const auto i = static_cast<std::ptrdiff_t>(std::floor(u * static_cast<double>(g)));
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(g) - 1));
  };
  for (const auto& p : points) ++counts[cell(p.s / boundary_length) * g + cell(0.5 * (p.cos_phi + 1.0))];
  for (auto c : counts) scan.occupied += c > 0 ? 1 : 0;
  if (scan.occupied == 0) return scan;
  const double expect = static_cast<double>(points.size()) / static_cast<double>(scan.occupied);
  for (auto c : counts) {
    if (c == 0) continue;
    const double d = static_cast<double>(c) - expect;
    scan.chi_square += d * d / expect;
  }
  scan.dof = scan.occupied - 1;

  std::vector<bool> seen(g * g, false);
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < g * g; ++start) {
    if (counts[start] > 0 || seen[start]) continue;
    bool touches_edge = false;
    std::size_t size = 0;
    stack.push_back(start);
    seen[start] = true;
    while (!stack.empty()) {
      const std::size_t c = stack.back();
      stack.pop_back();
      ++size;
      const std::size_t i = c / g, j = c % g;
      if (j == 0 || j == g - 1) touches_edge = true;
      const std::size_t nbrs[4] = {((i + 1) % g) * g + j, ((i + g - 1) % g) * g + j, j + 1 < g ? i * g + j + 1 : c,
                                   j > 0 ? i * g + j - 1 : c};
      for (std::size_t nb : nbrs) {
        if (counts[nb] == 0 && !seen[nb]) {
          seen[nb] = true;
          stack.push_back(nb);
        }
      }
    }
    if (!touches_edge) {
      ++scan.islands;
      scan.island_cells += size;
    }
  }
  return scan;
}

}  // namespace eflower::analysis

#endif  // EFLOWER_ANALYSIS_PORTRAIT_HPP
