#ifndef EFLOWER_GEOMETRY_FOCUSING_HPP
#define EFLOWER_GEOMETRY_FOCUSING_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "eflower/geometry/table.hpp"

namespace eflower::geometry {

struct AbsoluteFocusing {
  bool applicable = false;
  bool pass_projection = false;
  bool pass_angle = false;
  double projection = 0.0;        // largest |x| of the arc along the major axis, from the center
  double projection_limit = 0.0;  // a / sqrt(2)
  double angle = 0.0;             // between the minor axis and center -> endpoint

  bool pass() const { return applicable && (pass_projection || pass_angle); }
};

/// Absolute-focusing criteria for an arc symmetric about a minor vertex.
/// Both criteria are evaluated; arcs not centered on a minor vertex are
/// reported as not applicable.
inline AbsoluteFocusing is_absolutely_focusing(const Ellipse& e, double t_start, double t_end) {
  AbsoluteFocusing r;
  r.projection_limit = e.a / std::sqrt(2.0);
  const double mid = 0.5 * (t_start + t_end);
  const double half = 0.5 * (t_end - t_start);
  bool centered = false;
  for (MinorSide side : {MinorSide::plus, MinorSide::minus}) {
    const double apex = minor_vertex_param(side);
    const double off = wrap_angle(mid - apex, -std::numbers::pi);
    if (std::abs(off) <= 1e-9) centered = true;
  }
  if (!centered || half < 0.0) return r;
  r.applicable = true;
  const double w = std::min(half, std::numbers::pi);
  r.projection = w >= std::numbers::pi / 2.0 ? e.a : e.a * std::sin(w);
  r.angle = std::atan2(e.a * std::sin(w), e.b * std::cos(w));
  r.pass_projection = r.projection <= r.projection_limit;
  r.pass_angle = r.angle < std::numbers::pi / 4.0;
  return r;
}

inline AbsoluteFocusing is_absolutely_focusing(const EllipticArc& arc) {
  return is_absolutely_focusing(arc.ellipse, arc.t_start, arc.t_end);
}

/// Maximal osculating circle at the minor vertex an arc bulges through.
inline Circle petal_osculating_circle(const EllipticArc& arc) {
  const double mid = 0.5 * (arc.t_start + arc.t_end);
  const double dplus = std::abs(wrap_angle(mid - std::numbers::pi / 2.0, -std::numbers::pi));
  const double dminus = std::abs(wrap_angle(mid + std::numbers::pi / 2.0, -std::numbers::pi));
  return maximal_osculating_circle(arc.ellipse, dplus <= dminus ? MinorSide::plus : MinorSide::minus);
}

struct ChordWitness {
  std::size_t arc_from = 0;
  std::size_t arc_to = 0;
  Vec2 from;
  Vec2 to;
  double margin = 0.0;  // negative: an endpoint lies inside the other end's circle
};

struct CirclePremise {
  std::size_t arc = 0;
  int boundary_crossings = 0;  // inside/outside switches along the circle
  bool ok() const { return boundary_crossings == 2; }
};

struct DefocusingReport {
  std::size_t chords_tested = 0;
  std::size_t chords_passed = 0;
  std::vector<ChordWitness> worst;  // lowest-margin failures, ascending
  std::vector<CirclePremise> premises;

  double pass_fraction() const {
    return chords_tested == 0 ? 0.0 : static_cast<double>(chords_passed) / static_cast<double>(chords_tested);
  }
  bool premise_ok() const {
    return std::all_of(premises.begin(), premises.end(), [](const CirclePremise& p) { return p.ok(); });
  }
};

/// Margin by which the chord (p on arc i, q on arc j) clears both maximal
/// osculating circles: each endpoint must lie outside the other end's circle.
inline double chord_defocusing_margin(const FlowerTable& table, std::size_t i, const Vec2& p, std::size_t j,
                                      const Vec2& q) {
  const Circle ci = petal_osculating_circle(table.arc(i));
  const Circle cj = petal_osculating_circle(table.arc(j));
  return std::min(distance(q, ci.center) - ci.radius, distance(p, cj.center) - cj.radius);
}

/// Monte-Carlo check of the defocusing premise on chords that join two
/// different arcs through the core polygon.
inline DefocusingReport defocusing_check(const FlowerTable& table, std::size_t samples, std::uint64_t seed = 1,
                                         std::size_t keep_witnesses = 8) {
  DefocusingReport report;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double len = table.boundary_length();
  const double tol = table.tolerance();
  std::vector<ChordWitness> failures;
  for (std::size_t attempt = 0; report.chords_tested < samples && attempt < 100 * samples + 100; ++attempt) {
    const auto lp = table.locate(unit(rng) * len);
    const auto lq = table.locate(unit(rng) * len);
    if (lp.arc == lq.arc) continue;
    const Vec2 p = table.arc(lp.arc).point(lp.t);
    const Vec2 q = table.arc(lq.arc).point(lq.t);
    if (!segment_meets_convex(p, q, table.core())) continue;
    ++report.chords_tested;
    const double m = chord_defocusing_margin(table, lp.arc, p, lq.arc, q);
    if (m >= -tol) {
      ++report.chords_passed;
    } else {
      failures.push_back({lp.arc, lq.arc, p, q, m});
    }
  }
  std::sort(failures.begin(), failures.end(), [](const auto& x, const auto& y) { return x.margin < y.margin; });
  if (failures.size() > keep_witnesses) failures.resize(keep_witnesses);
  report.worst = std::move(failures);

  constexpr int ring = 720;
  for (std::size_t k = 0; k < table.size(); ++k) {
    const Circle c = petal_osculating_circle(table.arc(k));
    std::vector<bool> inside(ring);
    for (int i = 0; i < ring; ++i) inside[static_cast<std::size_t>(i)] = table.contains(c.center + unit_from_angle(kTwoPi * (i + 0.5) / ring) * c.radius);
    CirclePremise premise{k, 0};
    for (int i = 0; i < ring; ++i)
      if (inside[static_cast<std::size_t>(i)] != inside[static_cast<std::size_t>((i + 1) % ring)]) ++premise.boundary_crossings;
    report.premises.push_back(premise);
  }
  return report;
}

}  // namespace eflower::geometry

#endif  // EFLOWER_GEOMETRY_FOCUSING_HPP
