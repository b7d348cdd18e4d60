#ifndef EFLOWER_GEOMETRY_ELLIPSE_HPP
#define EFLOWER_GEOMETRY_ELLIPSE_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <utility>

#include <boost/math/special_functions/ellint_2.hpp>

#include "eflower/error.hpp"
#include "eflower/vec2.hpp"

namespace eflower::geometry {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Wraps an angle into [lo, lo + 2pi).
inline double wrap_angle(double t, double lo) {
  double r = std::fmod(t - lo, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return lo + r;
}

/// An ellipse given by its foci and semi-axes.
///
/// The canonical frame has its origin at the center and its x axis along
/// focus1 -> focus2, so focus1 = (-c, 0) and focus2 = (c, 0). Points are
/// parameterized as center + a cos(t) u + b sin(t) v, with v the CCW quarter
/// turn of u; t increases counter-clockwise.
struct Ellipse {
  Vec2 focus1;
  Vec2 focus2;
  double a = 1.0;
  double b = 1.0;
  double c = 0.0;
  Vec2 center;
  double rotation = 0.0;
  Vec2 major_dir{1.0, 0.0};
  Vec2 minor_dir{0.0, 1.0};

  bool is_circle() const { return c == 0.0; }
  double eccentricity() const { return c / a; }

  Vec2 to_local(const Vec2& p) const {
    const Vec2 d = p - center;
    return {dot(d, major_dir), dot(d, minor_dir)};
  }
  Vec2 to_world(const Vec2& q) const { return center + q.x * major_dir + q.y * minor_dir; }
  Vec2 local_dir(const Vec2& d) const { return {dot(d, major_dir), dot(d, minor_dir)}; }
  Vec2 world_dir(const Vec2& d) const { return d.x * major_dir + d.y * minor_dir; }

  Vec2 point(double t) const { return to_world({a * std::cos(t), b * std::sin(t)}); }

  // dP/dt.
  Vec2 derivative(double t) const { return world_dir({-a * std::sin(t), b * std::cos(t)}); }

  Vec2 unit_tangent(double t) const { return normalized(derivative(t)); }

  // Points into the ellipse.
  Vec2 inward_normal(double t) const { return perp(unit_tangent(t)); }

  double speed(double t) const {
    const double s = std::sin(t), co = std::cos(t);
    return std::sqrt(a * a * s * s + b * b * co * co);
  }

  // Unsigned curvature at parameter t.
  double curvature(double t) const {
    const double sp = speed(t);
    return a * b / (sp * sp * sp);
  }

  // Parameter of the point of the ellipse closest in angle to p.
  double param_of(const Vec2& p) const {
    const Vec2 q = to_local(p);
    return std::atan2(q.y / b, q.x / a);
  }

  // Implicit residual x^2/a^2 + y^2/b^2 - 1.
  double implicit(const Vec2& p) const {
    const Vec2 q = to_local(p);
    return q.x * q.x / (a * a) + q.y * q.y / (b * b) - 1.0;
  }

  double focal_sum(const Vec2& p) const { return distance(p, focus1) + distance(p, focus2); }

  // Arc length from t = 0 to t (signed, unbounded in t).
  double arc_length_to(double t) const {
    if (is_circle()) return a * t;
    const double e = eccentricity();
    constexpr double half_pi = std::numbers::pi / 2.0;
    return a * (boost::math::ellint_2(e, t - half_pi) - boost::math::ellint_2(e, -half_pi));
  }

  double perimeter() const { return arc_length_to(kTwoPi); }

  // Inverse of arc_length_to.
  double param_at_arc_length(double s) const {
    if (is_circle()) return s / a;
    double t = s * kTwoPi / perimeter();
    for (int it = 0; it < 50; ++it) {
      const double step = (arc_length_to(t) - s) / speed(t);
      t -= step;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(t))) break;
    }
    return t;
  }
};

inline Ellipse make_ellipse_with_axes(const Vec2& focus1, const Vec2& focus2, double a, double b) {
  Ellipse e;
  e.focus1 = focus1;
  e.focus2 = focus2;
  e.a = a;
  e.b = b;
  e.c = distance(focus1, focus2) / 2.0;
  e.center = (focus1 + focus2) * 0.5;
  if (e.c > 0.0) {
    e.major_dir = normalized(focus2 - focus1);
    e.rotation = std::atan2(e.major_dir.y, e.major_dir.x);
  }
  e.minor_dir = perp(e.major_dir);
  return e;
}

/// Ellipse with the given foci and semi-minor axis b; a = sqrt(b^2 + c^2).
inline Ellipse ellipse_from_foci(const Vec2& focus1, const Vec2& focus2, double b) {
  if (!(b > 0.0) || !std::isfinite(b)) throw Error(ErrorCode::invalid_parameter, "semi-minor axis must be positive");
  if (focus1 == focus2) throw Error(ErrorCode::degenerate_foci, "coincident foci describe a circle");
  const double c = distance(focus1, focus2) / 2.0;
  return make_ellipse_with_axes(focus1, focus2, std::sqrt(b * b + c * c), b);
}

inline Ellipse make_circle(const Vec2& center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw Error(ErrorCode::invalid_parameter, "radius must be positive");
  return make_ellipse_with_axes(center, center, radius, radius);
}

/// Ray parameters tau where origin + tau * dir meets the ellipse, ascending.
/// Returns the number of real roots written (0 or 2).
inline int ray_ellipse_roots(const Ellipse& e, const Vec2& origin, const Vec2& dir, double roots[2]) {
  const Vec2 p = e.to_local(origin);
  const Vec2 d = e.local_dir(dir);
  const double ia2 = 1.0 / (e.a * e.a), ib2 = 1.0 / (e.b * e.b);
  const double qa = d.x * d.x * ia2 + d.y * d.y * ib2;
  const double qb = 2.0 * (p.x * d.x * ia2 + p.y * d.y * ib2);
  const double qc = p.x * p.x * ia2 + p.y * p.y * ib2 - 1.0;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0 || qa == 0.0) return 0;
  const double q = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
  double r0 = q / qa;
  double r1 = q != 0.0 ? qc / q : r0;
  if (r0 > r1) std::swap(r0, r1);
  roots[0] = r0;
  roots[1] = r1;
  return 2;
}

struct Circle {
  Vec2 center;
  double radius = 0.0;
};

/// Largest radius of curvature, attained at the ends of the minor axis.
inline double max_osculating_radius(const Ellipse& e) { return e.a * e.a / e.b; }

enum class MinorSide { plus, minus };

inline double minor_vertex_param(MinorSide side) {
  return side == MinorSide::plus ? std::numbers::pi / 2.0 : -std::numbers::pi / 2.0;
}

/// Circle of curvature at one end of the minor axis.
inline Circle maximal_osculating_circle(const Ellipse& e, MinorSide side) {
  const double t = minor_vertex_param(side);
  const double r = max_osculating_radius(e);
  return {e.point(t) + e.inward_normal(t) * r, r};
}

/// A counter-clockwise piece of an ellipse, t_start <= t <= t_end.
///
/// A span of exactly 2pi denotes the whole ellipse (single-arc tables only).
struct EllipticArc {
  Ellipse ellipse;
  double t_start = 0.0;
  double t_end = 0.0;
  Vec2 start_point;
  Vec2 end_point;

  double span() const { return t_end - t_start; }
  bool is_full() const { return span() >= kTwoPi; }

  // Offset of t past t_start, wrapped into [0, 2pi).
  double offset(double t) const { return wrap_angle(t, t_start) - t_start; }

  bool contains(double t, double tol = 0.0) const {
    if (is_full()) return true;
    const double off = offset(t);
    return off <= span() + tol || off >= kTwoPi - tol;
  }

  // Distance in parameter to the nearest endpoint (infinite for full arcs).
  double endpoint_gap(double t) const {
    if (is_full()) return INFINITY;
    const double off = offset(t);
    const double to_start = std::min(off, kTwoPi - off);
    const double to_end = std::abs(off - span());
    return std::min(to_start, to_end);
  }

  double length() const { return ellipse.arc_length_to(t_end) - ellipse.arc_length_to(t_start); }

  Vec2 point(double t) const { return ellipse.point(t); }
};

inline EllipticArc make_arc(const Ellipse& e, double t_start, double t_end) {
  if (!(t_end > t_start) || t_end - t_start > kTwoPi) {
    throw Error(ErrorCode::invalid_parameter, "arc parameter range must satisfy 0 < t_end - t_start <= 2pi");
  }
  EllipticArc arc{e, t_start, t_end, e.point(t_start), e.point(t_end)};
  return arc;
}

}  // namespace eflower::geometry

#endif  // EFLOWER_GEOMETRY_ELLIPSE_HPP
