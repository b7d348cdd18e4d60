#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "eflower/eflower.hpp"
#include "support/oracles.hpp"

using namespace eflower;
using namespace eflower::geometry;

namespace {

constexpr double kPi = std::numbers::pi;

// Sutherland-Hodgman clip keeping the side where f >= 0.
std::vector<Vec2> clip(const std::vector<Vec2>& poly, const std::function<double(const Vec2&)>& f) {
  std::vector<Vec2> out;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % poly.size()];
    const double fp = f(p), fq = f(q);
    if (fp >= 0) out.push_back(p);
    if ((fp >= 0) != (fq >= 0)) out.push_back(p + (q - p) * (fp / (fp - fq)));
  }
  return out;
}

double area(const std::vector<Vec2>& poly) {
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) a += cross(poly[i], poly[(i + 1) % poly.size()]);
  return a / 2;
}

}  // namespace

// ---------------------------------------------------------------- core

TEST(CorePolygon, WildRoseKeepsTheBase) {
  const auto base = make_regular_polygon(5, 1.0);
  for (double b : {3.0, 8.0, 16.0}) {
    const auto table = build_sol_flower(base, b);
    ASSERT_EQ(table.core().size(), 5u);
    EXPECT_NEAR(area(table.core()), area(base.vertices()), 1e-12);
  }
}

TEST(CorePolygon, TriangleKeepsTheBase) {
  const auto base = make_regular_polygon(3, 1.0);
  // A triangle has no depth-3 zone.
  for (double rope : {3.5, 4.0, 8.0}) EXPECT_NEAR(area(build_caustic_flower(base, rope).core()), area(base.vertices()), 1e-12);
  EXPECT_NEAR(area(build_sol_flower(base, 4.0).core()), area(base.vertices()), 1e-12);
}

TEST(CorePolygon, DepthThreeEndpointCutsTheBase) {
  const auto base = make_regular_polygon(5, 1.0);
  const auto zones = zone_partition(base);
  int cuts = 0;
  for (const auto& cell : zones.cells) {
    if (cell.depth != 3) continue;
    const Vec2 b = centroid(cell.polygon);
    for (int i = 0; i < 5; ++i) {
      for (int m : {1, 2}) {
        const auto e = ellipse_from_foci(base.vertex(i), base.vertex(i + m), 1.0);
        const Vec2 far = distance(b, e.focus1) >= distance(b, e.focus2) ? e.focus1 : e.focus2;
        const Vec2 c = base.centroid();
        const double sign = oracle::side_of(b, far, c) >= 0 ? 1.0 : -1.0;
        const auto expect = clip(base.vertices(), [&](const Vec2& p) { return sign * oracle::side_of(b, far, p); });
        const Polygon got = clip_core(base, {{b, e}}, 1e-12);
        EXPECT_NEAR(area(got), area(expect), 1e-12);
        for (const auto& v : got) EXPECT_TRUE(base.contains(v, 1e-12));
        cuts += area(got) < area(base.vertices()) - 1e-9 ? 1 : 0;
      }
    }
  }
  EXPECT_GT(cuts, 0);
}

TEST(CorePolygon, ShallowEndpointsAreIgnored) {
  const auto base = make_regular_polygon(5, 1.0);
  const auto e = ellipse_from_foci(base.vertex(0), base.vertex(2), 1.0);
  const Vec2 shallow = base.side(0).midpoint() * 1.2;  // depth 1
  ASSERT_EQ(zone_depth(base, shallow), 1);
  EXPECT_NEAR(area(clip_core(base, {{shallow, e}}, 1e-12)), area(base.vertices()), 1e-14);
}

// ---------------------------------------------------------------- string construction

TEST(StringConstruction, TriangleGivesSixTangentContinuousArcs) {
  const auto tri = make_regular_polygon(3, 1.0);
  const auto curve = string_construction(tri.vertices(), 4.0);
  ASSERT_EQ(curve.arcs.size(), 6u);
  for (std::size_t k = 0; k < 6; ++k) {
    const auto& a = curve.arcs[k].arc;
    const auto& b = curve.arcs[(k + 1) % 6].arc;
    EXPECT_LT(distance(a.end_point, b.start_point), 1e-12);
    const Vec2 ta = a.ellipse.unit_tangent(a.t_end), tb = b.ellipse.unit_tangent(b.t_start);
    EXPECT_LT(std::abs(signed_angle(ta, tb)), 1e-9);
  }
}

TEST(StringConstruction, LengthMatchesHullPerimeterOracle) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  for (int n : {3, 4, 5}) {
    const auto base = make_regular_polygon(n, 1.0);
    for (double rope : {base.perimeter() + 0.3, base.perimeter() + 2.0, base.perimeter() + 9.0}) {
      const auto curve = string_construction(base.vertices(), rope);
      EXPECT_EQ(curve.arcs.size(), static_cast<std::size_t>(2 * n));
      for (int i = 0; i < 300; ++i) {
        const auto& piece = curve.arcs[static_cast<std::size_t>(u(rng) * curve.arcs.size()) % curve.arcs.size()];
        const Vec2 p = piece.arc.point(piece.arc.t_start + u(rng) * piece.arc.span());
        std::vector<Vec2> pts = base.vertices();
        pts.push_back(p);
        EXPECT_NEAR(oracle::hull_perimeter(oracle::convex_hull(pts)), rope, 1e-9 * rope);
        EXPECT_NEAR(piece.arc.ellipse.focal_sum(p) + piece.hidden_length, rope, 1e-9 * rope);
      }
    }
  }
}

TEST(StringConstruction, SegmentGivesGardenersEllipse) {
  const auto curve = string_construction({{-4, 0}, {4, 0}}, 2 * 5 + 2 * 4);
  ASSERT_EQ(curve.arcs.size(), 1u);
  const auto& e = curve.arcs[0].arc.ellipse;
  EXPECT_NEAR(e.a, 5.0, 1e-14);
  EXPECT_NEAR(e.b, 3.0, 1e-14);
  EXPECT_TRUE(curve.arcs[0].arc.is_full());
}

TEST(StringConstruction, ShortRopeIsRejected) {
  const auto tri = make_regular_polygon(3, 1.0);
  EXPECT_THROW(string_construction(tri.vertices(), 3.0), Error);
  try {
    string_construction(tri.vertices(), 2.5);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_parameter);
  }
}

// ---------------------------------------------------------------- focusing

TEST(AbsoluteFocusing, ZeroLengthArcPasses) {
  const auto e = ellipse_from_foci({-4, 0}, {4, 0}, 3);
  const auto f = is_absolutely_focusing(e, kPi / 2, kPi / 2);
  EXPECT_TRUE(f.applicable);
  EXPECT_TRUE(f.pass_projection);
  EXPECT_TRUE(f.pass_angle);
  EXPECT_NEAR(f.projection, 0.0, 1e-15);
}

TEST(AbsoluteFocusing, HalfEllipseFails) {
  const auto e = ellipse_from_foci({-4, 0}, {4, 0}, 3);
  const auto f = is_absolutely_focusing(make_arc(e, 0.0, kPi));
  EXPECT_TRUE(f.applicable);
  EXPECT_FALSE(f.pass_projection);
  EXPECT_FALSE(f.pass_angle);
  EXPECT_NEAR(f.projection, 5.0, 1e-14);
  EXPECT_NEAR(f.projection_limit, 5.0 / std::sqrt(2.0), 1e-14);
}

TEST(AbsoluteFocusing, AsymmetricArcIsNotApplicable) {
  const auto e = ellipse_from_foci({-4, 0}, {4, 0}, 3);
  const auto f = is_absolutely_focusing(make_arc(e, 0.2, 1.3));
  EXPECT_FALSE(f.applicable);
  EXPECT_FALSE(f.pass());
}

TEST(AbsoluteFocusing, WildRosePetalsImproveWithB) {
  const auto base = make_regular_polygon(5, 1.0);
  double last_angle = INFINITY;
  for (double b : {2.0, 4.0, 8.0, 16.0, 32.0}) {
    const auto f = is_absolutely_focusing(build_sol_flower(base, b).arc(0));
    ASSERT_TRUE(f.applicable);
    EXPECT_LT(f.angle, last_angle);
    last_angle = f.angle;
    if (b >= 16.0) {
      EXPECT_TRUE(f.pass_projection);
      EXPECT_TRUE(f.pass_angle);
    }
  }
}

TEST(Defocusing, LargeBPasses) {
  const auto table = build_sol_flower(make_regular_polygon(5, 1.0), 16.0);
  const auto rep = defocusing_check(table, 2000, 7);
  EXPECT_EQ(rep.chords_tested, 2000u);
  EXPECT_DOUBLE_EQ(rep.pass_fraction(), 1.0);
  EXPECT_TRUE(rep.premise_ok());
}

TEST(Defocusing, SmallBReportsWitnesses) {
  const auto table = build_sol_flower(make_regular_polygon(5, 1.0), 1.0);
  const auto rep = defocusing_check(table, 2000, 7);
  EXPECT_LT(rep.pass_fraction(), 1.0);
  ASSERT_FALSE(rep.worst.empty());
  for (std::size_t k = 1; k < rep.worst.size(); ++k) EXPECT_LE(rep.worst[k - 1].margin, rep.worst[k].margin);
  const auto& w = rep.worst.front();
  EXPECT_LT(w.margin, 0.0);
  EXPECT_NE(w.arc_from, w.arc_to);
  EXPECT_NEAR(chord_defocusing_margin(table, w.arc_from, w.from, w.arc_to, w.to), w.margin, 1e-12);
}

TEST(Defocusing, AntipodeOfTangencyLiesOnTheCircle) {
  const auto table = build_sol_flower(make_regular_polygon(5, 1.0), 8.0);
  const auto c = petal_osculating_circle(table.arc(0));
  const Vec2 apex = table.arc(0).ellipse.point(-kPi / 2);
  const Vec2 antipode = c.center * 2.0 - apex;
  EXPECT_NEAR(distance(antipode, c.center), c.radius, 1e-12);
  EXPECT_NEAR(distance(apex, c.center), c.radius, 1e-12);
}

// ---------------------------------------------------------------- serialization

namespace {

void expect_identical(const FlowerTable& a, const FlowerTable& b) {
  ASSERT_EQ(a.size(), b.size());
  EXPECT_EQ(a.kind(), b.kind());
  for (std::size_t k = 0; k < a.size(); ++k) {
    const auto& x = a.arc(k);
    const auto& y = b.arc(k);
    EXPECT_EQ(x.t_start, y.t_start);
    EXPECT_EQ(x.t_end, y.t_end);
    EXPECT_EQ(x.ellipse.a, y.ellipse.a);
    EXPECT_EQ(x.ellipse.b, y.ellipse.b);
    EXPECT_EQ(x.ellipse.focus1, y.ellipse.focus1);
    EXPECT_EQ(x.ellipse.focus2, y.ellipse.focus2);
    EXPECT_EQ(x.start_point, y.start_point);
    EXPECT_EQ(x.end_point, y.end_point);
    EXPECT_EQ(a.sources()[k].layer, b.sources()[k].layer);
    EXPECT_EQ(a.sources()[k].focus1, b.sources()[k].focus1);
  }
  EXPECT_EQ(a.core(), b.core());
  EXPECT_EQ(a.boundary_length(), b.boundary_length());
}

}  // namespace

TEST(Serialization, BitExactRoundTrip) {
  const std::vector<FlowerTable> tables = {
      build_sol_flower(make_regular_polygon(5, 1.0), 8.0), build_sol_flower(make_regular_polygon(6, 0.7), 3.3),
      build_caustic_flower(make_regular_polygon(4, 1.0), 6.0), make_ellipse_table(5, 3), make_circle_table(1.7),
      build_caustic_flower(BasePolygon({{0, 0}, {2, 0.1}, {2.5, 1.7}, {1, 2.6}, {-0.6, 1.4}}), 12.0)};
  for (const auto& t : tables) {
    const std::string text = serialize_table(t);
    const auto back = parse_table(text);
    expect_identical(t, back);
    EXPECT_EQ(serialize_table(back), text);
  }
}

TEST(Serialization, MalformedDocuments) {
  const std::string good = serialize_table(make_ellipse_table(5, 3));
  auto code_of = [](const std::string& text) {
    try {
      parse_table(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::io_error;
  };
  EXPECT_EQ(code_of("{"), ErrorCode::format_error);
  EXPECT_EQ(code_of("{}"), ErrorCode::format_error);
  auto doc = nlohmann::json::parse(good);
  doc["version"] = 99;
  EXPECT_EQ(code_of(doc.dump()), ErrorCode::format_error);
  doc = nlohmann::json::parse(good);
  doc["kind"] = "bouquet";
  EXPECT_EQ(code_of(doc.dump()), ErrorCode::format_error);
  doc = nlohmann::json::parse(good);
  doc["arcs"][0].erase("t_end");
  EXPECT_EQ(code_of(doc.dump()), ErrorCode::format_error);
  auto sol = nlohmann::json::parse(serialize_table(build_sol_flower(make_regular_polygon(5, 1.0), 8.0)));
  sol["arcs"][1]["t_end"] = sol["arcs"][1]["t_end"].get<double>() - 0.1;
  EXPECT_EQ(code_of(sol.dump()), ErrorCode::closure_failure);
  sol = nlohmann::json::parse(serialize_table(build_sol_flower(make_regular_polygon(5, 1.0), 8.0)));
  sol["arcs"][0]["foci"][1] = 7;
  EXPECT_EQ(code_of(sol.dump()), ErrorCode::format_error);
}

// ---------------------------------------------------------------- svg

TEST(Svg, DrawsTableAndOverlays) {
  const auto table = build_sol_flower(make_regular_polygon(5, 1.0), 8.0);
  SvgStyle style;
  const std::string plain = render_svg(table, style);
  EXPECT_EQ(plain.rfind("<svg", 0), 0u);
  EXPECT_NE(plain.find("</svg>"), std::string::npos);
  std::size_t arcs = 0;
  for (std::size_t p = plain.find(" A "); p != std::string::npos; p = plain.find(" A ", p + 1)) ++arcs;
  EXPECT_EQ(arcs, 5u);
  EXPECT_NE(plain.find("class=\"base\""), std::string::npos);
  EXPECT_NE(plain.find("class=\"core\""), std::string::npos);
  EXPECT_EQ(plain.find("class=\"zone\""), std::string::npos);
  style.show_zones = true;
  style.show_osculating = true;
  const std::string full = render_svg(table, style);
  EXPECT_NE(full.find("class=\"zone\""), std::string::npos);
  std::size_t circles = 0;
  for (std::size_t p = full.find("<circle"); p != std::string::npos; p = full.find("<circle", p + 1)) ++circles;
  EXPECT_EQ(circles, 5u);
}

TEST(Svg, FullEllipseUsesTwoHalves) {
  const std::string svg = render_svg(make_ellipse_table(5, 3));
  std::size_t arcs = 0;
  for (std::size_t p = svg.find(" A "); p != std::string::npos; p = svg.find(" A ", p + 1)) ++arcs;
  EXPECT_EQ(arcs, 2u);
}
