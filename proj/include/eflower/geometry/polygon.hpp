#ifndef EFLOWER_GEOMETRY_POLYGON_HPP
#define EFLOWER_GEOMETRY_POLYGON_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <vector>

#include "eflower/error.hpp"
#include "eflower/vec2.hpp"

namespace eflower::geometry {

using Polygon = std::vector<Vec2>;

/// Oriented line {p : dot(normal, p) = offset}; normal is a unit vector.
struct Line {
  Vec2 normal;
  double offset = 0.0;

  static Line through(const Vec2& p, const Vec2& q) {
    const Vec2 n = normalized(perp(q - p));
    return {n, dot(n, p)};
  }

  double signed_distance(const Vec2& p) const { return dot(normal, p) - offset; }
};

struct Segment {
  Vec2 p;
  Vec2 q;
  double length() const { return distance(p, q); }
  Vec2 midpoint() const { return (p + q) * 0.5; }
};

inline double signed_area(const Polygon& poly) {
  double area = 0.0;
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) area += cross(poly[i], poly[(i + 1) % n]);
  return area / 2.0;
}

inline double perimeter(const Polygon& poly) {
  double len = 0.0;
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) len += distance(poly[i], poly[(i + 1) % n]);
  return len;
}

// Area centroid; falls back to the vertex average for degenerate input.
inline Vec2 centroid(const Polygon& poly) {
  if (poly.empty()) return {};
  const double area = signed_area(poly);
  Vec2 avg;
  for (const auto& v : poly) avg += v;
  avg = avg / static_cast<double>(poly.size());
  if (poly.size() < 3 || std::abs(area) < 1e-300) return avg;
  Vec2 acc;
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % n];
    acc += (p + q) * cross(p, q);
  }
  return acc / (6.0 * area);
}

inline bool is_strictly_convex_ccw(const Polygon& poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e0 = poly[(i + 1) % n] - poly[i];
    const Vec2 e1 = poly[(i + 2) % n] - poly[(i + 1) % n];
    if (!(cross(e0, e1) > 0.0)) return false;
  }
  return true;
}

// True when p is inside or within tol of a CCW convex polygon.
inline bool convex_contains(const Polygon& poly, const Vec2& p, double tol = 0.0) {
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
    if (Line::through(poly[i], poly[(i + 1) % n]).signed_distance(p) < -tol) return false;
  }
  return true;
}

/// Keeps the part of a convex polygon with line.signed_distance >= 0.
inline Polygon clip_half_plane(const Polygon& poly, const Line& line) {
  Polygon out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % n];
    const double dp = line.signed_distance(p);
    const double dq = line.signed_distance(q);
    if (dp >= 0.0) out.push_back(p);
    if ((dp >= 0.0) != (dq >= 0.0)) {
      const double t = dp / (dp - dq);
      out.push_back(p + (q - p) * t);
    }
  }
  return out;
}

/// Whether segment [p0, p1] meets a convex region.
///
/// Regions with 0 vertices are empty, 1 vertex is a point, 2 vertices a
/// segment, 3+ a CCW convex polygon.
inline bool segment_meets_convex(const Vec2& p0, const Vec2& p1, const Polygon& region) {
  const std::size_t n = region.size();
  if (n == 0) return false;
  const Vec2 d = p1 - p0;
  if (n == 1) {
    const double len2 = dot(d, d);
    const double t = len2 > 0.0 ? std::clamp(dot(region[0] - p0, d) / len2, 0.0, 1.0) : 0.0;
    return distance(p0 + d * t, region[0]) <= 1e-12 * (1.0 + std::sqrt(len2));
  }
  if (n == 2) {
    const Vec2 e = region[1] - region[0];
    const double denom = cross(d, e);
    const Vec2 w = region[0] - p0;
    if (denom == 0.0) return false;
    const double t = cross(w, e) / denom;
    const double u = cross(w, d) / denom;
    return t >= 0.0 && t <= 1.0 && u >= 0.0 && u <= 1.0;
  }
  // Cyrus-Beck against the inward half-planes.
  double lo = 0.0, hi = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Line edge = Line::through(region[i], region[(i + 1) % n]);
    const double start = edge.signed_distance(p0);
    const double rate = dot(edge.normal, d);
    if (rate == 0.0) {
      if (start < 0.0) return false;
      continue;
    }
    const double t = -start / rate;
    if (rate > 0.0) {
      lo = std::max(lo, t);
    } else {
      hi = std::min(hi, t);
    }
    if (lo > hi) return false;
  }
  return true;
}

/// Drops vertices within tol of their predecessor and vertices lying within
/// tol of the line through their neighbours.
inline Polygon simplify(const Polygon& poly, double tol) {
  Polygon out;
  for (const auto& v : poly)
    if (out.empty() || distance(out.back(), v) > tol) out.push_back(v);
  while (out.size() > 1 && distance(out.front(), out.back()) <= tol) out.pop_back();
  bool changed = true;
  while (changed && out.size() > 3) {
    changed = false;
    for (std::size_t i = 0; i < out.size(); ++i) {
      const Vec2& prev = out[(i + out.size() - 1) % out.size()];
      const Vec2& next = out[(i + 1) % out.size()];
      if (std::abs(Line::through(prev, next).signed_distance(out[i])) <= tol) {
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  return out;
}

inline std::optional<Vec2> intersect_lines(const Line& l1, const Line& l2) {
  const double det = cross(l1.normal, l2.normal);
  if (std::abs(det) < 1e-14) return std::nullopt;
  return Vec2{(l1.offset * l2.normal.y - l2.offset * l1.normal.y) / det,
              (l2.offset * l1.normal.x - l1.offset * l2.normal.x) / det};
}

/// A convex base polygon with counter-clockwise vertices.
class BasePolygon {
 public:
  explicit BasePolygon(Polygon vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 3) throw Error(ErrorCode::invalid_parameter, "base polygon needs at least 3 vertices");
    if (!is_strictly_convex_ccw(vertices_)) {
      throw Error(ErrorCode::invalid_parameter, "base polygon must be strictly convex with CCW vertices");
    }
    for (std::size_t i = 0; i < vertices_.size(); ++i) side_lines_.push_back(Line::through(vertex(i), vertex(i + 1)));
  }

  std::size_t size() const { return vertices_.size(); }
  const Polygon& vertices() const { return vertices_; }

  // Cyclic access.
  const Vec2& vertex(std::ptrdiff_t i) const {
    const auto n = static_cast<std::ptrdiff_t>(vertices_.size());
    return vertices_[static_cast<std::size_t>(((i % n) + n) % n)];
  }

  // Side i runs from vertex i to vertex i+1; the polygon is on its
  // non-negative side.
  const std::vector<Line>& side_lines() const { return side_lines_; }
  Segment side(std::ptrdiff_t i) const { return {vertex(i), vertex(i + 1)}; }

  Vec2 centroid() const { return geometry::centroid(vertices_); }
  double perimeter() const { return geometry::perimeter(vertices_); }

  // Side length when all sides agree to 1e-12 relative, else nullopt.
  std::optional<double> regular_side_length() const {
    const double l0 = side(0).length();
    for (std::size_t i = 1; i < size(); ++i) {
      if (std::abs(side(static_cast<std::ptrdiff_t>(i)).length() - l0) > 1e-12 * l0) return std::nullopt;
    }
    return l0;
  }

  bool contains(const Vec2& p, double tol = 0.0) const { return convex_contains(vertices_, p, tol); }

  double diameter() const {
    double d = 0.0;
    for (const auto& p : vertices_)
      for (const auto& q : vertices_) d = std::max(d, distance(p, q));
    return d;
  }

 private:
  Polygon vertices_;
  std::vector<Line> side_lines_;
};

inline BasePolygon make_regular_polygon(int n, double side_length, Vec2 center = {}) {
  if (n < 3) throw Error(ErrorCode::invalid_parameter, "regular polygon needs n >= 3");
  if (!(side_length > 0.0) || !std::isfinite(side_length)) {
    throw Error(ErrorCode::invalid_parameter, "side length must be positive");
  }
  const double circumradius = side_length / (2.0 * std::sin(std::numbers::pi / n));
  Polygon v;
  v.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / n;
    v.push_back(center + Vec2{std::cos(angle), std::sin(angle)} * circumradius);
  }
  return BasePolygon(std::move(v));
}

/// Number of distinct focus-pair layers, floor(n/2).
inline int layer_count(std::size_t n) { return static_cast<int>(n / 2); }

/// Focus pair of layer m starting at vertex i: (A_i, A_{i+m}).
inline Segment small_diagonal(const BasePolygon& base, std::ptrdiff_t i, int m) {
  const int n = static_cast<int>(base.size());
  const int max_layer = n == 3 ? 1 : n / 2;
  if (m < 1 || m > max_layer) throw Error(ErrorCode::invalid_layer, "layer out of range 1..floor(n/2)");
  return {base.vertex(i), base.vertex(i + m)};
}

/// Distance from the center of a regular n-gon of side l to the midpoint of
/// a diagonal joining the ends of two adjacent sides. Signed: for a triangle
/// that "diagonal" is the opposite side and the value is negative.
inline double diagonal_center_distance(int n, double side_length) {
  if (n < 3) throw Error(ErrorCode::invalid_parameter, "n must be at least 3");
  if (!(side_length > 0.0)) throw Error(ErrorCode::invalid_parameter, "side length must be positive");
  const double pi = std::numbers::pi;
  return side_length * std::cos(2.0 * pi / n) / (2.0 * std::sin(pi / n));
}

}  // namespace eflower::geometry

#endif  // EFLOWER_GEOMETRY_POLYGON_HPP
