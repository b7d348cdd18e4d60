#ifndef EFLOWER_DYNAMICS_ORBIT_HPP
#define EFLOWER_DYNAMICS_ORBIT_HPP

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "eflower/dynamics/billiard.hpp"

namespace eflower::dynamics {

enum class Termination { completed, hit_corner, tangential, numeric_failure };

inline std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::completed: return "completed";
    case Termination::hit_corner: return "hit_corner";
    case Termination::tangential: return "tangential";
    case Termination::numeric_failure: return "numeric_failure";
  }
  return "numeric_failure";
}

inline Termination termination_of(Outcome o) {
  switch (o) {
    case Outcome::ok: return Termination::completed;
    case Outcome::hit_corner: return Termination::hit_corner;
    case Outcome::tangential: return Termination::tangential;
    case Outcome::numeric_failure: return Termination::numeric_failure;
  }
  return Termination::numeric_failure;
}

struct Link {
  double tau = 0.0;
  bool crosses_core = false;
  double winding = 0.0;  // signed angle swept about the table's winding center
};

struct OrbitRecord {
  std::vector<PhaseState> states;
  std::vector<Link> links;  // links[k] joins states[k] and states[k+1]
  Termination termination = Termination::completed;
};

inline Link make_link(const FlowerTable& table, const Vec2& from, const Vec2& to, double tau) {
  const Vec2& c = table.winding_center();
  return {tau, geometry::segment_meets_convex(from, to, table.core()), signed_angle(from - c, to - c)};
}

/// Iterates the collision map up to `bounces` times. Singular outcomes end
/// the record early and are reported in `termination`.
inline OrbitRecord trace_orbit(const FlowerTable& table, const PhaseState& initial, std::size_t bounces) {
  OrbitRecord rec;
  rec.states.reserve(bounces + 1);
  rec.links.reserve(bounces);
  rec.states.push_back(initial);
  for (std::size_t k = 0; k < bounces; ++k) {
    const Step step = billiard_map(table, rec.states.back());
    if (step.status != Outcome::ok) {
      rec.termination = termination_of(step.status);
      break;
    }
    rec.links.push_back(make_link(table, rec.states.back().point, step.state.point, step.collision.tau));
    rec.states.push_back(step.state);
  }
  return rec;
}

// 17 significant digits; round-trips any double.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Comma-separated orbit table. Link columns of row k describe the link
/// arriving at state k; row 0 carries zeros.
inline void write_orbit_csv(std::ostream& os, const OrbitRecord& rec) {
  os << "bounce,arc_index,s,phi,x,y,tau,crosses_core,winding_increment\n";
  for (std::size_t k = 0; k < rec.states.size(); ++k) {
    const auto& st = rec.states[k];
    const Link link = k == 0 ? Link{} : rec.links[k - 1];
    os << k << ',' << st.arc_index << ',' << format_double(st.s) << ',' << format_double(st.phi) << ','
       << format_double(st.point.x) << ',' << format_double(st.point.y) << ',' << format_double(link.tau) << ','
       << (link.crosses_core ? 1 : 0) << ',' << format_double(link.winding) << '\n';
  }
}

}  // namespace eflower::dynamics

#endif  // EFLOWER_DYNAMICS_ORBIT_HPP
