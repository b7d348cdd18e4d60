#ifndef EFLOWER_DYNAMICS_TANGENT_HPP
#define EFLOWER_DYNAMICS_TANGENT_HPP

#include <cmath>

#include "eflower/dynamics/billiard.hpp"

namespace eflower::dynamics {

/// Linear propagator of a Jacobi field (transverse displacement, transverse
/// velocity angle) across one flight and the following reflection.
struct TangentFrame {
  Mat2 m;

  double det() const { return m.det(); }
  double trace() const { return m.trace(); }
  friend TangentFrame operator*(const TangentFrame& a, const TangentFrame& b) { return {a.m * b.m}; }
  friend Vec2 operator*(const TangentFrame& a, const Vec2& v) { return a.m * v; }
};

/// Flight of length tau followed by a reflection at a wall of signed
/// curvature kappa (negative for a focusing wall seen from inside, positive
/// for a dispersing one) with reflection angle phi.
inline TangentFrame tangent_map_step(double kappa, double phi, double tau) {
  const double sphi = std::sin(phi);
  if (!(std::abs(sphi) > kTangentialCutoff)) throw Error(ErrorCode::tangential, "sin(phi) below cutoff");
  const Mat2 flight{1.0, tau, 0.0, 1.0};
  const Mat2 reflect{-1.0, 0.0, -2.0 * kappa / sphi, -1.0};
  return {reflect * flight};
}

/// Signed curvature of an elliptic wall seen from inside the table.
inline double wall_curvature(double unsigned_curvature) { return -unsigned_curvature; }

}  // namespace eflower::dynamics

#endif  // EFLOWER_DYNAMICS_TANGENT_HPP
