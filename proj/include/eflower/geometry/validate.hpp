#ifndef EFLOWER_GEOMETRY_VALIDATE_HPP
#define EFLOWER_GEOMETRY_VALIDATE_HPP

#include <vector>

#include "eflower/geometry/table.hpp"
#include "eflower/geometry/zones.hpp"

namespace eflower::geometry {

struct ArcVerdict {
  std::size_t arc = 0;
  int layer = 0;
  std::vector<int> crossed_lines;  // side lines the arc passes through
  double start_residual = 0.0;     // distance from the start point to the nearest side line
  double end_residual = 0.0;
  int deepest_zone = 0;
  bool ok() const { return crossed_lines.empty(); }
};

struct StructuralReport {
  std::vector<ArcVerdict> arcs;
  bool structural() const {
    for (const auto& a : arcs)
      if (!a.ok()) return false;
    return !arcs.empty();
  }
};

/// Checks that no arc passes through a side line of the base, sampling each
/// arc at `samples` + 1 points. Endpoints touching a line are allowed.
inline StructuralReport validate_structural(const FlowerTable& table, int samples = 512) {
  if (!table.base()) throw Error(ErrorCode::invalid_parameter, "structural validation needs a base polygon");
  const BasePolygon& base = *table.base();
  const auto& lines = base.side_lines();
  const double tol = table.tolerance();
  StructuralReport report;
  for (std::size_t k = 0; k < table.size(); ++k) {
    const auto& arc = table.arc(k);
    ArcVerdict v;
    v.arc = k;
    v.layer = table.sources()[k].layer;
    auto residual = [&](const Vec2& p) {
      double r = INFINITY;
      for (const auto& l : lines) r = std::min(r, std::abs(l.signed_distance(p)));
      return r;
    };
    v.start_residual = residual(arc.start_point);
    v.end_residual = residual(arc.end_point);
    std::vector<double> lo(lines.size(), INFINITY), hi(lines.size(), -INFINITY);
    for (int i = 0; i <= samples; ++i) {
      const Vec2 p = arc.point(arc.t_start + arc.span() * i / samples);
      v.deepest_zone = std::max(v.deepest_zone, zone_depth(base, p, tol));
      for (std::size_t l = 0; l < lines.size(); ++l) {
        const double d = lines[l].signed_distance(p);
        lo[l] = std::min(lo[l], d);
        hi[l] = std::max(hi[l], d);
      }
    }
    for (std::size_t l = 0; l < lines.size(); ++l)
      if (lo[l] < -tol && hi[l] > tol) v.crossed_lines.push_back(static_cast<int>(l));
    report.arcs.push_back(std::move(v));
  }
  return report;
}

}  // namespace eflower::geometry

#endif  // EFLOWER_GEOMETRY_VALIDATE_HPP
