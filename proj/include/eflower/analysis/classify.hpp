#ifndef EFLOWER_ANALYSIS_CLASSIFY_HPP
#define EFLOWER_ANALYSIS_CLASSIFY_HPP

#include <string>
#include <string_view>

#include "eflower/dynamics/orbit.hpp"

namespace eflower::analysis {

using dynamics::OrbitRecord;
using geometry::Polygon;

enum class OrbitLabel { core, track_cw, track_ccw, undetermined };

inline std::string_view to_string(OrbitLabel label) {
  switch (label) {
    case OrbitLabel::core: return "core";
    case OrbitLabel::track_cw: return "track_cw";
    case OrbitLabel::track_ccw: return "track_ccw";
    case OrbitLabel::undetermined: return "undetermined";
  }
  return "undetermined";
}

struct OrbitClass {
  OrbitLabel label = OrbitLabel::undetermined;
  double crossing_fraction = 0.0;
  bool winding_consistent = false;
  std::size_t bounces = 0;
  std::string reason;
};

inline constexpr std::size_t kDefaultMinLinks = 10;

/// Labels a finite record: core if every link meets the core region, a track
/// if none does and every link winds the same way, undetermined otherwise.
inline OrbitClass classify_orbit(const OrbitRecord& record, const Polygon& core,
                                 std::size_t min_links = kDefaultMinLinks) {
  OrbitClass cls;
  cls.bounces = record.links.size();
  if (record.links.size() < min_links) {
    cls.reason = record.termination == dynamics::Termination::completed
                     ? "record shorter than the minimum link count"
                     : "terminated early: " + std::string(dynamics::to_string(record.termination));
    return cls;
  }
  std::size_t crossings = 0, positive = 0, negative = 0;
  for (std::size_t k = 0; k < record.links.size(); ++k) {
    if (geometry::segment_meets_convex(record.states[k].point, record.states[k + 1].point, core)) ++crossings;
    const double w = record.links[k].winding;
    if (w > 0.0) ++positive;
    if (w < 0.0) ++negative;
  }
  const std::size_t n = record.links.size();
  cls.crossing_fraction = static_cast<double>(crossings) / static_cast<double>(n);
  cls.winding_consistent = positive == n || negative == n;
  if (crossings == n) {
    cls.label = OrbitLabel::core;
  } else if (crossings == 0 && cls.winding_consistent) {
    cls.label = positive == n ? OrbitLabel::track_ccw : OrbitLabel::track_cw;
  } else {
    cls.reason = crossings == 0 ? "winding sign changes" : "mixed core crossings";
  }
  return cls;
}

}  // namespace eflower::analysis

#endif  // EFLOWER_ANALYSIS_CLASSIFY_HPP
