#ifndef EFLOWER_DYNAMICS_INVARIANT_HPP
#define EFLOWER_DYNAMICS_INVARIANT_HPP

#include "eflower/geometry/ellipse.hpp"

namespace eflower::dynamics {

/// Product of the signed distances from the two foci to the line through
/// `point` along `direction`. Conserved by the billiard in a full ellipse:
/// positive for chords tangent to a confocal ellipse, negative for chords
/// crossing the focal segment, zero through a focus.
inline double ellipse_chord_invariant(const geometry::Ellipse& e, const Vec2& point, const Vec2& direction) {
  const Vec2 d = normalized(direction);
  return cross(d, e.focus1 - point) * cross(d, e.focus2 - point);
}

}  // namespace eflower::dynamics

#endif  // EFLOWER_DYNAMICS_INVARIANT_HPP
