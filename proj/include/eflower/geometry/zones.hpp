#ifndef EFLOWER_GEOMETRY_ZONES_HPP
#define EFLOWER_GEOMETRY_ZONES_HPP

#include <algorithm>
#include <vector>

#include "eflower/geometry/polygon.hpp"

namespace eflower::geometry {

/// One cell of the arrangement of the base polygon's side lines.
struct ZoneCell {
  Polygon polygon;            // clipped to the partition's bounding box when unbounded
  std::vector<bool> outside;  // per side line: on the far side from the base
  int depth = 0;              // side lines separating the cell from the base centroid
  bool bounded = true;
};

struct ZonePartition {
  std::vector<ZoneCell> cells;
  Polygon bounding_box;

  int max_depth() const {
    int d = 0;
    for (const auto& c : cells) d = std::max(d, c.depth);
    return d;
  }
};

/// Separation depth of a point: number of side lines with p strictly on the
/// outer side.
inline int zone_depth(const BasePolygon& base, const Vec2& p, double tol = 0.0) {
  int depth = 0;
  for (const auto& line : base.side_lines())
    if (line.signed_distance(p) < -tol) ++depth;
  return depth;
}

/// Cells of the side-line arrangement, each tagged with its depth. Unbounded
/// cells are clipped to a box enclosing every pairwise line intersection with
/// a margin of one base diameter.
inline ZonePartition zone_partition(const BasePolygon& base) {
  const auto& lines = base.side_lines();
  Vec2 lo = base.vertices().front(), hi = lo;
  auto grow = [&](const Vec2& p) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  };
  for (const auto& v : base.vertices()) grow(v);
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j)
      if (auto p = intersect_lines(lines[i], lines[j])) grow(*p);
  const double margin = base.diameter();
  lo -= Vec2{margin, margin};
  hi += Vec2{margin, margin};

  ZonePartition part;
  part.bounding_box = {lo, {hi.x, lo.y}, hi, {lo.x, hi.y}};

  struct Work {
    Polygon poly;
    std::vector<bool> outside;
  };
  std::vector<Work> cells{{part.bounding_box, {}}};
  for (const auto& line : lines) {
    const Line flipped{-line.normal, -line.offset};
    std::vector<Work> next;
    for (auto& cell : cells) {
      Polygon inner = clip_half_plane(cell.poly, line);
      Polygon outer = clip_half_plane(cell.poly, flipped);
      if (inner.size() >= 3 && std::abs(signed_area(inner)) > 0.0) {
        auto flags = cell.outside;
        flags.push_back(false);
        next.push_back({std::move(inner), std::move(flags)});
      }
      if (outer.size() >= 3 && std::abs(signed_area(outer)) > 0.0) {
        auto flags = cell.outside;
        flags.push_back(true);
        next.push_back({std::move(outer), std::move(flags)});
      }
    }
    cells = std::move(next);
  }

  const double box_tol = 1e-9 * (hi.x - lo.x);
  for (auto& w : cells) {
    ZoneCell cell;
    cell.depth = static_cast<int>(std::count(w.outside.begin(), w.outside.end(), true));
    for (const auto& v : w.poly) {
      if (std::abs(v.x - lo.x) < box_tol || std::abs(v.x - hi.x) < box_tol || std::abs(v.y - lo.y) < box_tol ||
          std::abs(v.y - hi.y) < box_tol) {
        cell.bounded = false;
      }
    }
    cell.polygon = std::move(w.poly);
    cell.outside = std::move(w.outside);
    part.cells.push_back(std::move(cell));
  }
  return part;
}

}  // namespace eflower::geometry

#endif  // EFLOWER_GEOMETRY_ZONES_HPP
