#ifndef EFLOWER_GEOMETRY_SERIALIZE_HPP
#define EFLOWER_GEOMETRY_SERIALIZE_HPP

#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "eflower/geometry/table.hpp"

namespace eflower::geometry {

inline constexpr const char* kTableFormat = "eflower-table";
inline constexpr int kTableFormatVersion = 1;

namespace detail {

inline nlohmann::ordered_json point_json(const Vec2& p) { return nlohmann::ordered_json::array({p.x, p.y}); }

inline nlohmann::ordered_json polygon_json(const Polygon& poly) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& p : poly) arr.push_back(point_json(p));
  return arr;
}

template <class J>
Vec2 point_from(const J& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(ErrorCode::format_error, "point must be a pair of numbers");
  }
  return {j[0].template get<double>(), j[1].template get<double>()};
}

template <class J>
Polygon polygon_from(const J& j) {
  if (!j.is_array()) throw Error(ErrorCode::format_error, "polygon must be an array of points");
  Polygon poly;
  for (const auto& p : j) poly.push_back(point_from(p));
  return poly;
}

template <class J>
const J& field(const J& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::format_error, std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace detail

/// Table document. Ellipses are stored by foci and semi-minor axis, so
/// rebuilding them repeats the original floating-point operations exactly.
/// Numbers use the shortest decimal form that round-trips.
inline nlohmann::ordered_json table_to_json(const FlowerTable& table) {
  nlohmann::ordered_json doc;
  doc["format"] = kTableFormat;
  doc["version"] = kTableFormatVersion;
  doc["kind"] = std::string(to_string(table.kind()));
  doc["base"] = table.base() ? detail::polygon_json(table.base()->vertices()) : nlohmann::ordered_json(nullptr);
  auto arcs = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < table.size(); ++k) {
    const auto& arc = table.arc(k);
    const auto& src = table.sources()[k];
    nlohmann::ordered_json a;
    if (src.focus1 >= 0 && table.base()) {
      a["foci"] = nlohmann::ordered_json::array({src.focus1, src.focus2});
    } else {
      a["foci"] = nullptr;
      a["foci_xy"] = nlohmann::ordered_json::array({detail::point_json(arc.ellipse.focus1), detail::point_json(arc.ellipse.focus2)});
    }
    a["layer"] = src.layer;
    a["b"] = arc.ellipse.b;
    a["t_start"] = arc.t_start;
    a["t_end"] = arc.t_end;
    arcs.push_back(std::move(a));
  }
  doc["arcs"] = std::move(arcs);
  doc["core"] = detail::polygon_json(table.core());
  return doc;
}

inline std::string serialize_table(const FlowerTable& table) { return table_to_json(table).dump(2) + "\n"; }

inline FlowerTable table_from_json(const nlohmann::json& doc) {
  try {
    if (detail::field(doc, "format") != kTableFormat) throw Error(ErrorCode::format_error, "not a table document");
    if (detail::field(doc, "version") != kTableFormatVersion) throw Error(ErrorCode::format_error, "unsupported table version");
    const auto kind = parse_table_kind(detail::field(doc, "kind").get<std::string>());
    if (!kind) throw Error(ErrorCode::format_error, "unknown table kind");
    std::optional<BasePolygon> base;
    if (!detail::field(doc, "base").is_null()) base = BasePolygon(detail::polygon_from(doc.at("base")));
    std::vector<EllipticArc> arcs;
    std::vector<ArcSource> sources;
    for (const auto& a : detail::field(doc, "arcs")) {
      ArcSource src;
      src.layer = detail::field(a, "layer").get<int>();
      src.b = detail::field(a, "b").get<double>();
      Vec2 f1, f2;
      if (!detail::field(a, "foci").is_null()) {
        if (!base) throw Error(ErrorCode::format_error, "focus indices need a base polygon");
        src.focus1 = a.at("foci").at(0).get<int>();
        src.focus2 = a.at("foci").at(1).get<int>();
        const int n = static_cast<int>(base->size());
        if (src.focus1 < 0 || src.focus1 >= n || src.focus2 < 0 || src.focus2 >= n) {
          throw Error(ErrorCode::format_error, "focus index out of range");
        }
        f1 = base->vertex(src.focus1);
        f2 = base->vertex(src.focus2);
      } else {
        const auto& xy = detail::field(a, "foci_xy");
        if (!xy.is_array() || xy.size() != 2) throw Error(ErrorCode::format_error, "foci_xy must hold two points");
        f1 = detail::point_from(xy[0]);
        f2 = detail::point_from(xy[1]);
      }
      const Ellipse e = f1 == f2 ? make_circle(f1, src.b) : ellipse_from_foci(f1, f2, src.b);
      arcs.push_back(make_arc(e, detail::field(a, "t_start").get<double>(), detail::field(a, "t_end").get<double>()));
      sources.push_back(src);
    }
    Polygon core = detail::polygon_from(detail::field(doc, "core"));
    return FlowerTable::assemble(std::move(arcs), std::move(sources), std::move(base), *kind).with_core(std::move(core));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::format_error, std::string("malformed table document: ") + ex.what());
  }
}

inline FlowerTable parse_table(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::format_error, std::string("table document is not valid JSON: ") + ex.what());
  }
  return table_from_json(doc);
}

inline FlowerTable load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open table file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_table(ss.str());
}

inline void save_table(const FlowerTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io_error, "cannot write table file " + path);
  out << serialize_table(table);
  if (!out) throw Error(ErrorCode::io_error, "failed writing " + path);
}

}  // namespace eflower::geometry

#endif  // EFLOWER_GEOMETRY_SERIALIZE_HPP
