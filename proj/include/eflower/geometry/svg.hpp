#ifndef EFLOWER_GEOMETRY_SVG_HPP
#define EFLOWER_GEOMETRY_SVG_HPP

#include <cstdio>
#include <sstream>
#include <string>

#include "eflower/geometry/focusing.hpp"
#include "eflower/geometry/zones.hpp"

namespace eflower::geometry {

struct SvgStyle {
  int width_px = 800;
  double margin = 0.05;  // fraction of the drawing extent
  std::string background = "#ffffff";
  std::string table_stroke = "#1f3b73";
  double table_width = 2.0;  // pixels
  std::string base_stroke = "#b03a2e";
  double base_width = 1.0;
  std::string core_fill = "#f5b041";
  double core_opacity = 0.35;
  std::string zone_stroke = "#999999";
  std::string osculating_stroke = "#2e8b57";
  double thin_width = 0.6;
  bool show_base = true;
  bool show_core = true;
  bool show_zones = false;
  bool show_osculating = false;
};

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline std::string polygon_points(const Polygon& poly) {
  std::string s;
  for (const auto& p : poly) s += num(p.x) + "," + num(p.y) + " ";
  if (!s.empty()) s.pop_back();
  return s;
}

// Elliptical-arc path command to `to` along the CCW piece of `e` with the
// given parameter span (< 2pi).
inline std::string arc_command(const Ellipse& e, double span, const Vec2& to) {
  const double deg = e.rotation * 180.0 / std::numbers::pi;
  return "A " + num(e.a) + " " + num(e.b) + " " + num(deg) + " " + (span > std::numbers::pi ? "1" : "0") + " 1 " +
         num(to.x) + " " + num(to.y);
}

}  // namespace detail

/// Self-contained SVG drawing of a table with optional overlays. Drawing
/// coordinates are the table's own, flipped so y points up.
inline std::string render_svg(const FlowerTable& table, const SvgStyle& style = {}) {
  using detail::num;
  std::vector<Vec2> pts;
  for (const auto& arc : table.arcs())
    for (int i = 0; i <= 64; ++i) pts.push_back(arc.point(arc.t_start + arc.span() * i / 64));
  if (table.base())
    for (const auto& v : table.base()->vertices()) pts.push_back(v);
  std::vector<Circle> circles;
  if (style.show_osculating) {
    for (const auto& arc : table.arcs()) {
      circles.push_back(petal_osculating_circle(arc));
      const auto& c = circles.back();
      pts.push_back(c.center - Vec2{c.radius, c.radius});
      pts.push_back(c.center + Vec2{c.radius, c.radius});
    }
  }
  Vec2 lo = pts.front(), hi = pts.front();
  for (const auto& p : pts) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  const double extent = std::max(hi.x - lo.x, hi.y - lo.y);
  const double pad = style.margin * extent;
  lo = lo - Vec2{pad, pad};
  hi = hi + Vec2{pad, pad};
  const double w = hi.x - lo.x, h = hi.y - lo.y;
  const double scale = style.width_px / w;
  const int height_px = static_cast<int>(std::ceil(h * scale));
  const auto stroke = [&](double px) { return num(px / scale); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << style.width_px << "\" height=\"" << height_px
     << "\" viewBox=\"" << num(lo.x) << ' ' << num(-hi.y) << ' ' << num(w) << ' ' << num(h) << "\">\n";
  os << "<rect x=\"" << num(lo.x) << "\" y=\"" << num(-hi.y) << "\" width=\"" << num(w) << "\" height=\"" << num(h)
     << "\" fill=\"" << style.background << "\"/>\n";
  os << "<g transform=\"scale(1,-1)\">\n";
  if (style.show_zones && table.base()) {
    const auto zones = zone_partition(*table.base());
    const int depth = std::max(1, zones.max_depth());
    for (const auto& cell : zones.cells) {
      os << "<polygon class=\"zone\" data-depth=\"" << cell.depth << "\" points=\"" << detail::polygon_points(cell.polygon)
         << "\" fill=\"" << style.zone_stroke << "\" fill-opacity=\"" << num(0.05 + 0.25 * (depth - cell.depth) / depth)
         << "\" stroke=\"" << style.zone_stroke << "\" stroke-width=\"" << stroke(style.thin_width) << "\"/>\n";
    }
  }
  if (style.show_core && table.core().size() >= 3) {
    os << "<polygon class=\"core\" points=\"" << detail::polygon_points(table.core()) << "\" fill=\"" << style.core_fill
       << "\" fill-opacity=\"" << num(style.core_opacity) << "\" stroke=\"none\"/>\n";
  } else if (style.show_core && table.core().size() == 2) {
    const auto& c = table.core();
    os << "<line class=\"core\" x1=\"" << num(c[0].x) << "\" y1=\"" << num(c[0].y) << "\" x2=\"" << num(c[1].x)
       << "\" y2=\"" << num(c[1].y) << "\" stroke=\"" << style.core_fill << "\" stroke-width=\"" << stroke(style.table_width)
       << "\"/>\n";
  }
  if (style.show_base && table.base()) {
    os << "<polygon class=\"base\" points=\"" << detail::polygon_points(table.base()->vertices())
       << "\" fill=\"none\" stroke=\"" << style.base_stroke << "\" stroke-width=\"" << stroke(style.base_width) << "\"/>\n";
  }
  for (const auto& c : circles) {
    os << "<circle class=\"osculating\" cx=\"" << num(c.center.x) << "\" cy=\"" << num(c.center.y) << "\" r=\""
       << num(c.radius) << "\" fill=\"none\" stroke=\"" << style.osculating_stroke << "\" stroke-width=\""
       << stroke(style.thin_width) << "\"/>\n";
  }
  os << "<path class=\"table\" d=\"M " << num(table.arc(0).start_point.x) << ' ' << num(table.arc(0).start_point.y);
  for (const auto& arc : table.arcs()) {
    if (arc.is_full()) {
      const double mid = arc.t_start + std::numbers::pi;
      os << ' ' << detail::arc_command(arc.ellipse, std::numbers::pi, arc.point(mid));
      os << ' ' << detail::arc_command(arc.ellipse, std::numbers::pi, arc.end_point);
    } else {
      os << ' ' << detail::arc_command(arc.ellipse, arc.span(), arc.end_point);
    }
  }
  os << " Z\" fill=\"none\" stroke=\"" << style.table_stroke << "\" stroke-width=\"" << stroke(style.table_width)
     << "\" stroke-linejoin=\"round\"/>\n";
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace eflower::geometry

#endif  // EFLOWER_GEOMETRY_SVG_HPP
