#ifndef EFLOWER_DYNAMICS_BILLIARD_HPP
#define EFLOWER_DYNAMICS_BILLIARD_HPP

#include <cmath>
#include <string_view>

#include "eflower/geometry/table.hpp"

namespace eflower::dynamics {

using geometry::FlowerTable;

// Reflections with sin(phi) at or below this are treated as tangential.
inline constexpr double kTangentialCutoff = 1e-12;

// Hits within this parameter distance of an arc end are corner hits.
inline constexpr double kCornerTolerance = 1e-9;

enum class Outcome { ok, hit_corner, tangential, numeric_failure };

inline std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::ok: return "ok";
    case Outcome::hit_corner: return "hit_corner";
    case Outcome::tangential: return "tangential";
    case Outcome::numeric_failure: return "numeric_failure";
  }
  return "numeric_failure";
}

/// A point of the collision map: outgoing state just after a reflection.
/// phi is measured from the counter-clockwise boundary tangent to the
/// outgoing direction, 0 < phi < pi.
struct PhaseState {
  std::size_t arc_index = 0;
  double t = 0.0;  // ellipse parameter of `point` on its arc
  double s = 0.0;
  double phi = 0.0;
  Vec2 point;
  Vec2 direction;
};

/// Mirror an incoming unit direction about the inward unit normal.
inline Vec2 reflect(const Vec2& direction, const Vec2& normal) {
  const double dn = dot(direction, normal);
  if (!(dn < 0.0)) throw Error(ErrorCode::not_incoming, "direction does not point into the wall");
  return direction - normal * (2.0 * dn);
}

inline PhaseState state_at(const FlowerTable& table, std::size_t arc, double t, double phi) {
  const auto& e = table.arc(arc).ellipse;
  const Vec2 tangent = e.unit_tangent(t);
  const Vec2 normal = perp(tangent);
  return {arc, t, table.s_of(arc, t), phi, e.point(t), tangent * std::cos(phi) + normal * std::sin(phi)};
}

/// Phase state from Birkhoff coordinates.
inline PhaseState make_state(const FlowerTable& table, double s, double phi) {
  if (!(std::sin(phi) > kTangentialCutoff) || !(phi > 0.0) || !(phi < std::numbers::pi)) {
    throw Error(ErrorCode::tangential, "phi must lie strictly inside (0, pi)");
  }
  const auto loc = table.locate(s);
  PhaseState st = state_at(table, loc.arc, loc.t, phi);
  st.s = table.wrap_s(s);
  return st;
}

struct Collision {
  Outcome status = Outcome::numeric_failure;
  std::size_t arc = 0;
  double t = 0.0;
  Vec2 point;
  double tau = 0.0;
};

/// First boundary hit of the ray from + tau * direction with tau beyond the
/// launch guard of 1e-9 x diameter. Each candidate ellipse is intersected in
/// closed form; hits that would enter an ellipse from outside are ignored.
inline Collision next_collision(const FlowerTable& table, const Vec2& from, const Vec2& direction) {
  const double tau_min = table.tolerance();
  Collision best;
  best.tau = INFINITY;
  for (std::size_t k = 0; k < table.size(); ++k) {
    const auto& arc = table.arc(k);
    double roots[2];
    const int count = geometry::ray_ellipse_roots(arc.ellipse, from, direction, roots);
    for (int r = 0; r < count; ++r) {
      const double tau = roots[r];
      if (!(tau > tau_min) || tau >= best.tau) continue;
      const Vec2 p = from + direction * tau;
      const double t = arc.ellipse.param_of(p);
      if (!arc.contains(t, kCornerTolerance)) continue;
      if (dot(direction, arc.ellipse.inward_normal(t)) >= 0.0) continue;
      best = {Outcome::ok, k, t, p, tau};
    }
  }
  if (!std::isfinite(best.tau)) {
    best.status = Outcome::numeric_failure;
    return best;
  }
  if (table.arc(best.arc).endpoint_gap(best.t) <= kCornerTolerance) best.status = Outcome::hit_corner;
  return best;
}

struct Step {
  Outcome status = Outcome::ok;
  PhaseState state;     // valid when status == ok
  Collision collision;  // the flight that produced it
  double curvature = 0.0;  // unsigned boundary curvature at the hit
};

/// One flight and one reflection. The outgoing direction is renormalized.
inline Step billiard_map(const FlowerTable& table, const PhaseState& state) {
  Step step;
  step.collision = next_collision(table, state.point, state.direction);
  if (step.collision.status != Outcome::ok) {
    step.status = step.collision.status;
    return step;
  }
  const auto& e = table.arc(step.collision.arc).ellipse;
  const double t = step.collision.t;
  const Vec2 tangent = e.unit_tangent(t);
  const Vec2 normal = perp(tangent);
  if (!(dot(state.direction, normal) < 0.0)) {
    step.status = Outcome::numeric_failure;
    return step;
  }
  const Vec2 out = normalized(reflect(state.direction, normal));
  const double phi = std::atan2(dot(out, normal), dot(out, tangent));
  if (!(std::sin(phi) > kTangentialCutoff)) {
    step.status = Outcome::tangential;
    return step;
  }
  step.state = {step.collision.arc, t, table.s_of(step.collision.arc, t), phi, step.collision.point, out};
  step.curvature = e.curvature(t);
  return step;
}

/// State at the same point with the outgoing direction reversed along the
/// incoming link; mapping it retraces the previous flight.
inline PhaseState reversed(const FlowerTable& table, const PhaseState& state, const Vec2& incoming) {
  const auto& e = table.arc(state.arc_index).ellipse;
  const Vec2 tangent = e.unit_tangent(state.t);
  const Vec2 normal = perp(tangent);
  const Vec2 out = -incoming;
  PhaseState r = state;
  r.direction = out;
  r.phi = std::atan2(dot(out, normal), dot(out, tangent));
  return r;
}

}  // namespace eflower::dynamics

#endif  // EFLOWER_DYNAMICS_BILLIARD_HPP
