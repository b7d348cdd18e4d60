#ifndef EFLOWER_GEOMETRY_TABLE_HPP
#define EFLOWER_GEOMETRY_TABLE_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eflower/geometry/ellipse.hpp"
#include "eflower/geometry/polygon.hpp"

namespace eflower::geometry {

enum class TableKind { unstructured, structural, sol };

inline std::string_view to_string(TableKind kind) {
  switch (kind) {
    case TableKind::unstructured: return "unstructured";
    case TableKind::structural: return "structural";
    case TableKind::sol: return "sol";
  }
  return "unstructured";
}

inline std::optional<TableKind> parse_table_kind(std::string_view s) {
  if (s == "unstructured") return TableKind::unstructured;
  if (s == "structural") return TableKind::structural;
  if (s == "sol") return TableKind::sol;
  return std::nullopt;
}

/// Construction metadata of one arc: which base vertices carry its foci.
///
/// Indices are -1 for tables without a base polygon; the ellipse then holds
/// the foci explicitly.
struct ArcSource {
  int focus1 = -1;
  int focus2 = -1;
  int layer = 0;
  double b = 0.0;

  bool same_focus_pair(const ArcSource& o) const {
    if (focus1 < 0 || o.focus1 < 0) return false;
    return (focus1 == o.focus1 && focus2 == o.focus2) || (focus1 == o.focus2 && focus2 == o.focus1);
  }
};

struct BoundaryLocation {
  std::size_t arc = 0;
  double t = 0.0;
};

/// A billiard table whose boundary is a closed counter-clockwise chain of
/// elliptic arcs. Immutable once assembled.
class FlowerTable {
 public:
  /// Checks C0 closure at 1e-9 x diameter and builds the arc-length index.
  static FlowerTable assemble(std::vector<EllipticArc> arcs, std::vector<ArcSource> sources,
                              std::optional<BasePolygon> base, TableKind kind, Polygon core = {}) {
    if (arcs.empty()) throw Error(ErrorCode::invalid_parameter, "table needs at least one arc");
    if (sources.size() != arcs.size()) throw Error(ErrorCode::invalid_parameter, "one source record per arc required");
    FlowerTable t;
    t.arcs_ = std::move(arcs);
    t.sources_ = std::move(sources);
    t.base_ = std::move(base);
    t.kind_ = kind;
    t.core_ = std::move(core);
    t.index();
    if (t.arcs_.size() == 1 && !t.arcs_[0].is_full()) {
      throw Error(ErrorCode::closure_failure, "a single arc must span the whole ellipse", 0);
    }
    for (std::size_t k = 0; k < t.arcs_.size() && t.arcs_.size() > 1; ++k) {
      const auto& next = t.arcs_[(k + 1) % t.arcs_.size()];
      if (t.arcs_[k].is_full()) throw Error(ErrorCode::closure_failure, "full ellipse inside a chain", static_cast<int>(k));
      const double gap = distance(t.arcs_[k].end_point, next.start_point);
      if (gap > t.tolerance()) {
        throw Error(ErrorCode::closure_failure,
                    "arc " + std::to_string(k) + " does not meet its successor (gap " + std::to_string(gap) + ")",
                    static_cast<int>(k));
      }
    }
    return t;
  }

  FlowerTable with_core(Polygon core) const {
    FlowerTable t = *this;
    t.core_ = std::move(core);
    t.winding_center_ = t.pick_winding_center();
    return t;
  }

  const std::vector<EllipticArc>& arcs() const { return arcs_; }
  const EllipticArc& arc(std::size_t k) const { return arcs_[k]; }
  const std::vector<ArcSource>& sources() const { return sources_; }
  const std::optional<BasePolygon>& base() const { return base_; }
  const Polygon& core() const { return core_; }
  TableKind kind() const { return kind_; }
  std::size_t size() const { return arcs_.size(); }

  double boundary_length() const { return offsets_.back(); }
  double arc_offset(std::size_t k) const { return offsets_[k]; }
  double diameter() const { return diameter_; }

  // Geometric coincidence tolerance.
  double tolerance() const { return 1e-9 * diameter_; }

  // Reference point for winding angles: core centroid, else base centroid,
  // else the center of the first ellipse.
  const Vec2& winding_center() const { return winding_center_; }

  /// Boundary coordinate of parameter t on arc k.
  double s_of(std::size_t k, double t) const {
    const auto& arc = arcs_[k];
    const double tw = arc.t_start + arc.offset(t);
    const double local = arc.ellipse.arc_length_to(tw) - start_lengths_[k];
    return offsets_[k] + std::clamp(local, 0.0, offsets_[k + 1] - offsets_[k]);
  }

  /// Wraps s into [0, boundary_length()).
  double wrap_s(double s) const {
    const double len = boundary_length();
    double r = std::fmod(s, len);
    if (r < 0.0) r += len;
    return r;
  }

  BoundaryLocation locate(double s) const {
    const double sw = wrap_s(s);
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), sw);
    std::size_t k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - offsets_.begin() - 1));
    k = std::min(k, arcs_.size() - 1);
    const auto& arc = arcs_[k];
    const double t = arc.ellipse.param_at_arc_length(start_lengths_[k] + (sw - offsets_[k]));
    return {k, std::clamp(t, arc.t_start, arc.t_end)};
  }

  Vec2 point_at(double s) const {
    const auto loc = locate(s);
    return arcs_[loc.arc].point(loc.t);
  }

  /// Ray-casting point-in-table test.
  bool contains(const Vec2& p) const {
    const Vec2 dir = normalized(Vec2{0.8191520442889918, 0.5735764363510462});
    int crossings = 0;
    for (const auto& arc : arcs_) {
      double roots[2];
      const int n = ray_ellipse_roots(arc.ellipse, p, dir, roots);
      for (int i = 0; i < n; ++i) {
        if (roots[i] <= 0.0) continue;
        const double t = arc.ellipse.param_of(p + dir * roots[i]);
        if (arc.contains(t)) ++crossings;
      }
    }
    return crossings % 2 == 1;
  }

 private:
  void index() {
    offsets_.assign(1, 0.0);
    start_lengths_.clear();
    for (const auto& arc : arcs_) {
      start_lengths_.push_back(arc.ellipse.arc_length_to(arc.t_start));
      offsets_.push_back(offsets_.back() + arc.length());
    }
    std::vector<Vec2> samples;
    constexpr int per_arc = 64;
    for (const auto& arc : arcs_)
      for (int i = 0; i <= per_arc; ++i) samples.push_back(arc.point(arc.t_start + arc.span() * i / per_arc));
    diameter_ = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i)
      for (std::size_t j = i + 1; j < samples.size(); ++j) diameter_ = std::max(diameter_, distance(samples[i], samples[j]));
    winding_center_ = pick_winding_center();
  }

  Vec2 pick_winding_center() const {
    if (core_.size() >= 1) return centroid(core_);
    if (base_) return base_->centroid();
    return arcs_.front().ellipse.center;
  }

  std::vector<EllipticArc> arcs_;
  std::vector<ArcSource> sources_;
  std::optional<BasePolygon> base_;
  TableKind kind_ = TableKind::unstructured;
  Polygon core_;
  std::vector<double> offsets_;
  std::vector<double> start_lengths_;
  double diameter_ = 0.0;
  Vec2 winding_center_;
};

/// Billiard in a full ellipse centered at the origin with its major axis on
/// the x axis. The core region is the focal segment.
inline FlowerTable make_ellipse_table(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || b > a) throw Error(ErrorCode::invalid_parameter, "need a >= b > 0");
  if (a == b) {
    const Ellipse e = make_circle({}, a);
    return FlowerTable::assemble({make_arc(e, -std::numbers::pi, std::numbers::pi)}, {ArcSource{-1, -1, 0, a}},
                                 std::nullopt, TableKind::unstructured);
  }
  const double c = std::sqrt(a * a - b * b);
  const Ellipse e = ellipse_from_foci({-c, 0.0}, {c, 0.0}, b);
  return FlowerTable::assemble({make_arc(e, -std::numbers::pi, std::numbers::pi)}, {ArcSource{-1, -1, 0, b}},
                               std::nullopt, TableKind::unstructured, Polygon{e.focus1, e.focus2});
}

/// Billiard in a circle of the given radius centered at the origin; no core.
inline FlowerTable make_circle_table(double radius) { return make_ellipse_table(radius, radius); }

}  // namespace eflower::geometry

#endif  // EFLOWER_GEOMETRY_TABLE_HPP
