#ifndef EFLOWER_GEOMETRY_SOL_HPP
#define EFLOWER_GEOMETRY_SOL_HPP

#include <string>

#include "eflower/geometry/core.hpp"

namespace eflower::geometry {

namespace detail {

// Farthest forward intersection of a ray with an ellipse.
inline std::optional<Vec2> ray_exit(const Ellipse& e, const Vec2& origin, const Vec2& dir) {
  double roots[2];
  if (ray_ellipse_roots(e, origin, dir, roots) == 0 || roots[1] <= 0.0) return std::nullopt;
  return origin + dir * roots[1];
}

}  // namespace detail

/// Special one-layer flower over a convex base.
///
/// Arc i lies on the ellipse with foci A_i, A_{i+2} and semi-minor axis b,
/// between the outward perpendicular rays erected at the midpoints of sides
/// A_iA_{i+1} and A_{i+1}A_{i+2}. For a triangle A_{i+2} = A_{i-1}, so the
/// foci are the ends of a side.
inline FlowerTable build_sol_flower(const BasePolygon& base, double b) {
  if (!(b > 0.0) || !std::isfinite(b)) throw Error(ErrorCode::invalid_parameter, "b must be positive");
  const auto n = static_cast<std::ptrdiff_t>(base.size());
  const int layer = n == 3 ? 1 : 2;

  std::vector<EllipticArc> arcs;
  std::vector<ArcSource> sources;
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const Ellipse e = ellipse_from_foci(base.vertex(i), base.vertex(i + 2), b);
    Vec2 ends[2];
    for (int k = 0; k < 2; ++k) {
      const std::ptrdiff_t side = i + k;
      const Vec2 origin = base.side(side).midpoint();
      const Vec2 outward = -base.side_lines()[static_cast<std::size_t>(side % n)].normal;
      const auto hit = detail::ray_exit(e, origin, outward);
      if (!hit) {
        throw Error(ErrorCode::construction_failure,
                    "ellipse " + std::to_string(i) + " misses the perpendicular ray of side " + std::to_string(side % n),
                    static_cast<int>(side % n));
      }
      ends[k] = *hit;
    }
    // The petal bulges past A_{i+1}; pick the minor vertex on that side.
    const double apex = e.to_local(base.vertex(i + 1)).y < 0.0 ? -std::numbers::pi / 2.0 : std::numbers::pi / 2.0;
    const double t_start = apex - (wrap_angle(apex - e.param_of(ends[0]), 0.0));
    const double t_end = apex + wrap_angle(e.param_of(ends[1]) - apex, 0.0);
    if (!(t_end - t_start < kTwoPi)) {
      throw Error(ErrorCode::construction_failure, "petal " + std::to_string(i) + " does not pass its minor vertex",
                  static_cast<int>(i));
    }
    arcs.push_back(make_arc(e, t_start, t_end));
    sources.push_back({static_cast<int>(i), static_cast<int>((i + 2) % n), layer, b});
  }
  auto table = FlowerTable::assemble(std::move(arcs), std::move(sources), base, TableKind::sol);
  return table.with_core(compute_core_polygon(table));
}

}  // namespace eflower::geometry

#endif  // EFLOWER_GEOMETRY_SOL_HPP
