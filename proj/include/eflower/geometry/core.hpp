#ifndef EFLOWER_GEOMETRY_CORE_HPP
#define EFLOWER_GEOMETRY_CORE_HPP

#include <utility>
#include <vector>

#include "eflower/geometry/table.hpp"
#include "eflower/geometry/zones.hpp"

namespace eflower::geometry {

/// Base core of a flower: the base polygon, cut by the lines joining every
/// arc endpoint that lies in a zone of depth >= 3 to the far focus of the
/// arc's ellipse.
inline Polygon clip_core(const BasePolygon& base, const std::vector<std::pair<Vec2, Ellipse>>& endpoints, double tol) {
  const Vec2 inner = base.centroid();
  Polygon core = base.vertices();
  for (const auto& [endpoint, e] : endpoints) {
    if (zone_depth(base, endpoint, tol) < 3) continue;
    const Vec2& far = distance(endpoint, e.focus1) >= distance(endpoint, e.focus2) ? e.focus1 : e.focus2;
    Line line = Line::through(endpoint, far);
    if (line.signed_distance(inner) < 0.0) line = {-line.normal, -line.offset};
    core = clip_half_plane(core, line);
  }
  core = simplify(core, tol);
  if (core.size() < 3 || !(signed_area(core) > 0.0)) {
    throw Error(ErrorCode::degenerate_core, "core polygon is empty");
  }
  return core;
}

/// Core polygon of a table built over a base.
inline Polygon compute_core_polygon(const FlowerTable& table) {
  if (!table.base()) throw Error(ErrorCode::invalid_parameter, "core polygon needs a base polygon");
  std::vector<std::pair<Vec2, Ellipse>> endpoints;
  for (const auto& arc : table.arcs()) {
    if (arc.is_full()) continue;
    endpoints.emplace_back(arc.start_point, arc.ellipse);
    endpoints.emplace_back(arc.end_point, arc.ellipse);
  }
  return clip_core(*table.base(), endpoints, table.tolerance());
}

}  // namespace eflower::geometry

#endif  // EFLOWER_GEOMETRY_CORE_HPP
