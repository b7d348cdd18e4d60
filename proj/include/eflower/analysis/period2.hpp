#ifndef EFLOWER_ANALYSIS_PERIOD2_HPP
#define EFLOWER_ANALYSIS_PERIOD2_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eflower/dynamics/billiard.hpp"
#include "eflower/dynamics/tangent.hpp"

namespace eflower::analysis {

using geometry::FlowerTable;

enum class Stability { elliptic, parabolic, hyperbolic };

inline std::string_view to_string(Stability s) {
  switch (s) {
    case Stability::elliptic: return "elliptic";
    case Stability::parabolic: return "parabolic";
    case Stability::hyperbolic: return "hyperbolic";
  }
  return "hyperbolic";
}

inline Stability stability_of_trace(double trace, double tol = 1e-12) {
  if (std::abs(trace) < 2.0 - tol) return Stability::elliptic;
  if (std::abs(trace) > 2.0 + tol) return Stability::hyperbolic;
  return Stability::parabolic;
}

struct Period2Orbit {
  std::size_t arc_a = 0;
  std::size_t arc_b = 0;
  double t_a = 0.0;
  double t_b = 0.0;
  Vec2 point_a;
  Vec2 point_b;
  double chord = 0.0;
  double trace = 0.0;
  Stability stability = Stability::hyperbolic;
};

struct Period2Rejection {
  std::size_t arc_a = 0;
  std::size_t arc_b = 0;
  std::string reason;
};

struct Period2Search {
  std::vector<Period2Orbit> orbits;
  std::vector<Period2Rejection> rejected;
};

/// Monodromy trace of a two-bounce orbit bouncing along a common normal of
/// length `chord` between walls of unsigned curvature k_a and k_b.
inline double two_bounce_trace(double chord, double k_a, double k_b) {
  constexpr double right = std::numbers::pi / 2.0;
  const auto to_b = dynamics::tangent_map_step(dynamics::wall_curvature(k_b), right, chord);
  const auto to_a = dynamics::tangent_map_step(dynamics::wall_curvature(k_a), right, chord);
  return (to_a * to_b).trace();
}

namespace detail {

inline std::optional<double> contained_minor_vertex(const geometry::EllipticArc& arc) {
  for (geometry::MinorSide side : {geometry::MinorSide::plus, geometry::MinorSide::minus}) {
    const double t = geometry::minor_vertex_param(side);
    if (arc.contains(t) && arc.endpoint_gap(t) > dynamics::kCornerTolerance) return t;
  }
  return std::nullopt;
}

}  // namespace detail

/// Period-2 orbits along the common minor axis of pairs of arcs whose
/// ellipses share a focus pair (by construction indices).
inline Period2Search find_period2_minor_axis_orbits(const FlowerTable& table) {
  Period2Search out;
  const auto& sources = table.sources();
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t j = i + 1; j < table.size(); ++j) {
      if (!sources[i].same_focus_pair(sources[j])) continue;
      const auto& arc_i = table.arc(i);
      const auto& arc_j = table.arc(j);
      const auto ti = detail::contained_minor_vertex(arc_i);
      const auto tj = detail::contained_minor_vertex(arc_j);
      if (!ti || !tj) {
        out.rejected.push_back({i, j, "arc does not contain a minor vertex"});
        continue;
      }
      const Vec2 pi = arc_i.point(*ti);
      const Vec2 pj = arc_j.point(*tj);
      // Confocal ellipses share center and axes; the vertices must sit on
      // opposite sides of the focal line.
      const double yi = arc_i.ellipse.to_local(pi).y;
      const double yj = arc_i.ellipse.to_local(pj).y;
      if (!(yi * yj < 0.0)) {
        out.rejected.push_back({i, j, "minor vertices on the same side"});
        continue;
      }
      const double chord = distance(pi, pj);
      const Vec2 dir = (pj - pi) / chord;
      const auto hit = dynamics::next_collision(table, pi, dir);
      const auto back = dynamics::next_collision(table, pj, -dir);
      const double tol = table.tolerance() * 10.0;
      if (hit.status != dynamics::Outcome::ok || hit.arc != j || std::abs(hit.tau - chord) > tol ||
          back.status != dynamics::Outcome::ok || back.arc != i || std::abs(back.tau - chord) > tol) {
        out.rejected.push_back({i, j, "chord blocked by another arc"});
        continue;
      }
      Period2Orbit orbit{i, j, *ti, *tj, pi, pj, chord, 0.0, Stability::hyperbolic};
      orbit.trace = two_bounce_trace(chord, arc_i.ellipse.curvature(*ti), arc_j.ellipse.curvature(*tj));
      orbit.stability = stability_of_trace(orbit.trace);
      out.orbits.push_back(orbit);
    }
  }
  return out;
}

}  // namespace eflower::analysis

#endif  // EFLOWER_ANALYSIS_PERIOD2_HPP
