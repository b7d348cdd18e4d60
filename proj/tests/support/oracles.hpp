// Independent reference computations used by the tests. Nothing here calls
// the library routine it is meant to check.
#ifndef EFLOWER_TESTS_ORACLES_HPP
#define EFLOWER_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "eflower/eflower.hpp"

namespace oracle {

using eflower::Vec2;

// Curvature of a parametric curve by central differences.
inline double fd_curvature(const std::function<Vec2(double)>& curve, double t, double h = 1e-4) {
  const Vec2 p0 = curve(t - h), p1 = curve(t), p2 = curve(t + h);
  const Vec2 d1 = (p2 - p0) / (2 * h);
  const Vec2 d2 = (p2 - p1 * 2.0 + p0) / (h * h);
  return std::abs(d1.x * d2.y - d1.y * d2.x) / std::pow(d1.x * d1.x + d1.y * d1.y, 1.5);
}

// Point of the axis-aligned ellipse x^2/a^2 + y^2/b^2 = 1 at angle t.
inline Vec2 ellipse_point(double a, double b, double t) { return {a * std::cos(t), b * std::sin(t)}; }

// Vertices of the regular n-gon with side l by rotating a radius vector.
inline std::vector<Vec2> regular_vertices(int n, double l) {
  const double r = l / (2.0 * std::sin(std::numbers::pi / n));
  std::vector<Vec2> v;
  for (int k = 0; k < n; ++k) v.push_back({r * std::cos(2 * std::numbers::pi * k / n), r * std::sin(2 * std::numbers::pi * k / n)});
  return v;
}

// Signed distance of p from the line through u and v; positive on the left.
inline double side_of(const Vec2& u, const Vec2& v, const Vec2& p) {
  const Vec2 d = v - u;
  return (d.x * (p.y - u.y) - d.y * (p.x - u.x)) / std::hypot(d.x, d.y);
}

// Ray casting against a polygon; independent of the convex-only library test.
inline bool point_in_polygon(const std::vector<Vec2>& poly, const Vec2& p) {
  bool inside = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    if ((poly[i].y > p.y) != (poly[j].y > p.y) &&
        p.x < (poly[j].x - poly[i].x) * (p.y - poly[i].y) / (poly[j].y - poly[i].y) + poly[i].x)
      inside = !inside;
  }
  return inside;
}

// Andrew's monotone chain.
inline std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  std::vector<Vec2> h(2 * pts.size());
  std::size_t k = 0;
  auto turn = [](const Vec2& o, const Vec2& a, const Vec2& b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && turn(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && turn(h[k - 2], h[k - 1], pts[i - 1]) <= 0) --k;
    h[k++] = pts[i - 1];
  }
  h.resize(k - 1);
  return h;
}

inline double hull_perimeter(const std::vector<Vec2>& h) {
  double p = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) p += eflower::distance(h[i], h[(i + 1) % h.size()]);
  return p;
}

// Difference of boundary coordinates folded into (-L/2, L/2].
inline double s_delta(double s1, double s0, double len) {
  double d = std::fmod(s1 - s0, len);
  if (d > len / 2) d -= len;
  if (d <= -len / 2) d += len;
  return d;
}

struct Jacobian {
  double m00, m01, m10, m11;
  double det() const { return m00 * m11 - m01 * m10; }
  double trace() const { return m00 + m11; }
};

// Jacobian of `iterations` collision maps in (s, cos phi) by central
// differences with step h. Returns false if a perturbed orbit is singular.
inline bool fd_jacobian(const eflower::geometry::FlowerTable& table, double s, double phi, int iterations, double h,
                        Jacobian& out) {
  using namespace eflower::dynamics;
  const double len = table.boundary_length();
  auto image = [&](double ss, double c, double& s_out, double& c_out) {
    PhaseState st = make_state(table, ss, std::acos(c));
    for (int k = 0; k < iterations; ++k) {
      const Step step = billiard_map(table, st);
      if (step.status != Outcome::ok) return false;
      st = step.state;
    }
    s_out = st.s;
    c_out = std::cos(st.phi);
    return true;
  };
  const double c = std::cos(phi);
  double sp, cp, sm, cm, sp2, cp2, sm2, cm2;
  if (!image(s + h, c, sp, cp) || !image(s - h, c, sm, cm) || !image(s, c + h, sp2, cp2) || !image(s, c - h, sm2, cm2))
    return false;
  out.m00 = s_delta(sp, sm, len) / (2 * h);
  out.m10 = (cp - cm) / (2 * h);
  out.m01 = s_delta(sp2, sm2, len) / (2 * h);
  out.m11 = (cp2 - cm2) / (2 * h);
  return true;
}

// Two-bounce monodromy trace of a period-2 orbit between mirrors of radii
// r1, r2 at distance L: 2 (2 g1 g2 - 1) with g = 1 - L / r.
inline double two_mirror_trace(double length, double r1, double r2) {
  const double g1 = 1.0 - length / r1, g2 = 1.0 - length / r2;
  return 2.0 * (2.0 * g1 * g2 - 1.0);
}

}  // namespace oracle

#endif  // EFLOWER_TESTS_ORACLES_HPP
