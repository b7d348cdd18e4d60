#ifndef EFLOWER_GEOMETRY_STRING_CONSTRUCTION_HPP
#define EFLOWER_GEOMETRY_STRING_CONSTRUCTION_HPP

#include <string>
#include <vector>

#include "eflower/geometry/core.hpp"

namespace eflower::geometry {

/// One elliptic piece of a string-construction curve. The foci are the two
/// caustic vertices where the taut rope leaves the caustic; the rest of the
/// rope wraps the hidden chain of caustic edges.
struct StringArc {
  EllipticArc arc;
  int focus1 = 0;
  int focus2 = 0;
  double hidden_length = 0.0;
};

struct StringCurve {
  Polygon caustic;
  double rope_length = 0.0;
  std::vector<StringArc> arcs;
};

namespace detail {

// Visible edge chain from an exterior point: edges first..first+count-1.
struct Regime {
  int first = 0;
  int count = 0;
  friend bool operator==(const Regime&, const Regime&) = default;
};

inline Regime regime_at(const std::vector<Line>& lines, const Vec2& p) {
  const int n = static_cast<int>(lines.size());
  std::vector<bool> vis(static_cast<std::size_t>(n));
  int count = 0;
  for (int k = 0; k < n; ++k) {
    vis[static_cast<std::size_t>(k)] = lines[static_cast<std::size_t>(k)].signed_distance(p) < 0.0;
    count += vis[static_cast<std::size_t>(k)] ? 1 : 0;
  }
  if (count == 0 || count == n) throw Error(ErrorCode::construction_failure, "point is not outside the caustic");
  for (int k = 0; k < n; ++k) {
    if (vis[static_cast<std::size_t>(k)] && !vis[static_cast<std::size_t>((k + n - 1) % n)]) return {k, count};
  }
  throw Error(ErrorCode::construction_failure, "visible edges are not contiguous");
}

inline double chain_length(const Polygon& poly, int from, int count) {
  const int n = static_cast<int>(poly.size());
  double len = 0.0;
  for (int k = 0; k < count; ++k) {
    const int e = (from + k) % n;
    len += distance(poly[static_cast<std::size_t>(e)], poly[static_cast<std::size_t>((e + 1) % n)]);
  }
  return len;
}

// Length of a taut loop around the caustic and an exterior point p.
inline double loop_length(const Polygon& poly, const std::vector<Line>& lines, const Vec2& p) {
  const int n = static_cast<int>(poly.size());
  const Regime r = regime_at(lines, p);
  const Vec2& t1 = poly[static_cast<std::size_t>(r.first)];
  const Vec2& t2 = poly[static_cast<std::size_t>((r.first + r.count) % n)];
  return distance(p, t1) + distance(p, t2) + chain_length(poly, (r.first + r.count) % n, n - r.count);
}

// Smallest CCW parameter advance in (min_step, 2pi] at which the ellipse
// crosses `line` with signed distance changing in the direction `sign`.
inline double next_crossing(const Ellipse& e, double t, const Line& line, double sign, double min_step) {
  const Vec2 u = e.world_dir({1.0, 0.0});
  const Vec2 v = e.world_dir({0.0, 1.0});
  const double ca = e.a * dot(line.normal, u);
  const double cb = e.b * dot(line.normal, v);
  const double rhs = line.offset - dot(line.normal, e.center);
  const double amp = std::hypot(ca, cb);
  if (amp == 0.0 || std::abs(rhs) > amp) return INFINITY;
  const double base = std::atan2(cb, ca);
  const double spread = std::acos(std::clamp(rhs / amp, -1.0, 1.0));
  double best = INFINITY;
  for (double root : {base + spread, base - spread}) {
    const double rate = -ca * std::sin(root) + cb * std::cos(root);
    if (rate * sign <= 0.0) continue;
    double step = wrap_angle(root - t, 0.0);
    if (step <= min_step) step += kTwoPi;
    best = std::min(best, step);
  }
  return best;
}

}  // namespace detail

/// Closed curve traced by a taut rope of the given length looped around a
/// convex caustic polygon (CCW vertices). A two-vertex caustic is a segment
/// and yields one full ellipse.
inline StringCurve string_construction(const Polygon& caustic, double rope_length) {
  const int n = static_cast<int>(caustic.size());
  if (n < 2) throw Error(ErrorCode::invalid_parameter, "caustic needs at least two vertices");
  if (n >= 3 && !is_strictly_convex_ccw(caustic)) throw Error(ErrorCode::invalid_parameter, "caustic must be convex CCW");
  const double perim = perimeter(caustic);
  if (!(rope_length > perim)) throw Error(ErrorCode::invalid_parameter, "rope must be longer than the caustic perimeter");

  StringCurve curve{caustic, rope_length, {}};
  if (n == 2) {
    const double c = distance(caustic[0], caustic[1]) / 2.0;
    const double a = (rope_length - 2.0 * c) / 2.0;
    const Ellipse e = ellipse_from_foci(caustic[0], caustic[1], std::sqrt(a * a - c * c));
    curve.arcs.push_back({make_arc(e, -std::numbers::pi, std::numbers::pi), 0, 1, 2.0 * c});
    return curve;
  }

  std::vector<Line> lines;
  for (int k = 0; k < n; ++k) lines.push_back(Line::through(caustic[static_cast<std::size_t>(k)], caustic[static_cast<std::size_t>((k + 1) % n)]));

  auto ellipse_for = [&](const detail::Regime& r) {
    const int f1 = r.first;
    const int f2 = (r.first + r.count) % n;
    const double hidden = detail::chain_length(caustic, f2, n - r.count);
    const Vec2& p1 = caustic[static_cast<std::size_t>(f1)];
    const Vec2& p2 = caustic[static_cast<std::size_t>(f2)];
    const double c = distance(p1, p2) / 2.0;
    const double a = (rope_length - hidden) / 2.0;
    return std::pair{ellipse_from_foci(p1, p2, std::sqrt(a * a - c * c)), hidden};
  };

  // Seed point on the outward normal through the midpoint of edge 0.
  const Vec2 origin = (caustic[0] + caustic[1]) * 0.5;
  const Vec2 outward = -lines[0].normal;
  double lo = 0.0, hi = rope_length;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const Vec2 p = origin + outward * mid;
    if (mid > 0.0 && detail::loop_length(caustic, lines, p) > rope_length) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const Vec2 seed = origin + outward * (0.5 * (lo + hi));
  detail::Regime regime = detail::regime_at(lines, seed);
  auto [ellipse, hidden] = ellipse_for(regime);
  double t = ellipse.param_of(seed);

  // Advance to the next regime change.
  struct Event {
    double step;
    detail::Regime next;
  };
  auto next_event = [&](const Ellipse& e, double t0, const detail::Regime& r) {
    const int ahead = (r.first + r.count) % n;  // becomes visible
    const int behind = r.first;                 // becomes hidden
    const double s_ahead = detail::next_crossing(e, t0, lines[static_cast<std::size_t>(ahead)], -1.0, 1e-12);
    const double s_behind = detail::next_crossing(e, t0, lines[static_cast<std::size_t>(behind)], 1.0, 1e-12);
    detail::Regime nr = r;
    const double step = std::min(s_ahead, s_behind);
    if (!std::isfinite(step)) throw Error(ErrorCode::construction_failure, "rope curve never leaves a regime");
    const double tie = 1e-12 * kTwoPi;
    if (s_ahead <= step + tie) nr.count += 1;
    if (s_behind <= step + tie) {
      nr.first = (nr.first + 1) % n;
      nr.count -= 1;
    }
    return Event{step, nr};
  };

  Event ev = next_event(ellipse, t, regime);
  Vec2 joint = ellipse.point(t + ev.step);
  const Vec2 first_joint = joint;
  const detail::Regime first_regime = ev.next;
  regime = ev.next;
  const double tol = 1e-9 * rope_length;
  for (int guard = 0; guard < 4 * n + 4; ++guard) {
    std::tie(ellipse, hidden) = ellipse_for(regime);
    const double t0 = ellipse.param_of(joint);
    ev = next_event(ellipse, t0, regime);
    const EllipticArc arc = make_arc(ellipse, t0, t0 + ev.step);
    curve.arcs.push_back({arc, regime.first, (regime.first + regime.count) % n, hidden});
    joint = arc.end_point;
    regime = ev.next;
    if (regime == first_regime && distance(joint, first_joint) < tol) return curve;
  }
  throw Error(ErrorCode::closure_failure, "rope curve did not close");
}

/// Structural flower over a base polygon built by the string construction
/// with the base itself as the caustic.
inline FlowerTable build_caustic_flower(const BasePolygon& base, double rope_length) {
  const StringCurve curve = string_construction(base.vertices(), rope_length);
  const int n = static_cast<int>(base.size());
  std::vector<EllipticArc> arcs;
  std::vector<ArcSource> sources;
  for (const auto& piece : curve.arcs) {
    const int d = ((piece.focus2 - piece.focus1) % n + n) % n;
    arcs.push_back(piece.arc);
    sources.push_back({piece.focus1, piece.focus2, std::min(d, n - d), piece.arc.ellipse.b});
  }
  auto table = FlowerTable::assemble(std::move(arcs), std::move(sources), base, TableKind::structural);
  return table.with_core(compute_core_polygon(table));
}

}  // namespace eflower::geometry

#endif  // EFLOWER_GEOMETRY_STRING_CONSTRUCTION_HPP
