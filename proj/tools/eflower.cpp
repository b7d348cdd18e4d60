// Command-line front end for elliptic flower billiards.

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eflower/eflower.hpp"
#include "run_dir.hpp"

namespace eflower::cli {
namespace {

constexpr const char* kVersion = "0.1.0";

using dynamics::format_double;
using geometry::FlowerTable;

struct Options {
  // Table source.
  std::string table_path;
  std::string base = "regular:5,1";
  std::string kind = "sol";
  std::optional<double> b;
  std::optional<double> a;
  std::optional<double> rope;
  std::optional<double> radius;
  // Run parameters.
  std::string out;
  std::uint64_t seed = 1;
  std::size_t bounces = 1000;
  std::size_t samples = 1000;
  std::size_t lags = 50;
  std::size_t grid = 200;
  std::size_t checkpoints = 20;
  unsigned workers = 0;
  std::optional<double> s0;
  std::optional<double> phi0;
  std::string observable = "cos_phi";
  bool any_orbit = false;
  bool zones = false;
  bool osculating = false;
  std::string style_path;
  std::string n_values;
  std::string b_values;
};

json options_json(const std::string& verb, const Options& o) {
  json j;
  j["command"] = verb;
  if (!o.table_path.empty()) {
    j["table"] = o.table_path;
  } else {
    j["table_spec"] = {{"base", o.base}, {"kind", o.kind}};
    if (o.b) j["table_spec"]["b"] = *o.b;
    if (o.a) j["table_spec"]["a"] = *o.a;
    if (o.rope) j["table_spec"]["rope"] = *o.rope;
    if (o.radius) j["table_spec"]["radius"] = *o.radius;
  }
  j["seed"] = o.seed;
  j["n_bounces"] = o.bounces;
  j["samples"] = o.samples;
  j["lags"] = o.lags;
  j["grid"] = o.grid;
  j["checkpoints"] = o.checkpoints;
  j["workers"] = o.workers;
  if (o.s0) j["s"] = *o.s0;
  if (o.phi0) j["phi"] = *o.phi0;
  j["observable"] = o.observable;
  j["any_orbit"] = o.any_orbit;
  j["zones"] = o.zones;
  j["osculating"] = o.osculating;
  if (!o.style_path.empty()) j["style"] = o.style_path;
  if (verb == "sweep") {
    j["n_values"] = o.n_values;
    j["b_values"] = o.b_values;
  }
  return j;
}

std::vector<double> parse_numbers(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::invalid_parameter, std::string("bad number in ") + what + ": '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) {
      throw Error(ErrorCode::invalid_parameter, std::string("bad number in ") + what + ": '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

/// "regular:n,l" or explicit vertices "x,y;x,y;...".
geometry::BasePolygon parse_base(const std::string& spec) {
  if (spec.rfind("regular:", 0) == 0) {
    const auto v = parse_numbers(spec.substr(8), "--base");
    if (v.size() != 2 || v[0] != std::floor(v[0])) throw Error(ErrorCode::invalid_parameter, "--base regular:n,l expected");
    return geometry::make_regular_polygon(static_cast<int>(v[0]), v[1]);
  }
  geometry::Polygon poly;
  std::stringstream ss(spec);
  std::string vertex;
  while (std::getline(ss, vertex, ';')) {
    const auto v = parse_numbers(vertex, "--base");
    if (v.size() != 2) throw Error(ErrorCode::invalid_parameter, "--base vertices must be x,y pairs separated by ';'");
    poly.push_back({v[0], v[1]});
  }
  return geometry::BasePolygon(poly);
}

double require(const std::optional<double>& v, const char* flag) {
  if (!v) throw Error(ErrorCode::invalid_parameter, std::string(flag) + " is required for this table kind");
  return *v;
}

FlowerTable build_table(const Options& o) {
  if (o.kind == "sol") return geometry::build_sol_flower(parse_base(o.base), require(o.b, "--b"));
  if (o.kind == "caustic") return geometry::build_caustic_flower(parse_base(o.base), require(o.rope, "--rope"));
  if (o.kind == "ellipse") return geometry::make_ellipse_table(require(o.a, "--a"), require(o.b, "--b"));
  if (o.kind == "circle") return geometry::make_circle_table(require(o.radius, "--radius"));
  throw Error(ErrorCode::invalid_parameter, "unknown --kind '" + o.kind + "' (sol, caustic, ellipse, circle)");
}

FlowerTable obtain_table(const Options& o) { return o.table_path.empty() ? build_table(o) : geometry::load_table(o.table_path); }

geometry::SvgStyle load_style(const Options& o) {
  geometry::SvgStyle st;
  if (!o.style_path.empty()) {
    std::ifstream in(o.style_path);
    if (!in) throw Error(ErrorCode::io_error, "cannot open style file " + o.style_path);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
      st.width_px = j.value("width_px", st.width_px);
      st.margin = j.value("margin", st.margin);
      st.background = j.value("background", st.background);
      st.table_stroke = j.value("table_stroke", st.table_stroke);
      st.table_width = j.value("table_width", st.table_width);
      st.base_stroke = j.value("base_stroke", st.base_stroke);
      st.base_width = j.value("base_width", st.base_width);
      st.core_fill = j.value("core_fill", st.core_fill);
      st.core_opacity = j.value("core_opacity", st.core_opacity);
      st.zone_stroke = j.value("zone_stroke", st.zone_stroke);
      st.osculating_stroke = j.value("osculating_stroke", st.osculating_stroke);
      st.thin_width = j.value("thin_width", st.thin_width);
      st.show_base = j.value("show_base", st.show_base);
      st.show_core = j.value("show_core", st.show_core);
    } catch (const nlohmann::json::exception& ex) {
      throw Error(ErrorCode::format_error, std::string("bad style file: ") + ex.what());
    }
  }
  st.show_zones = o.zones || st.show_zones;
  st.show_osculating = o.osculating || st.show_osculating;
  return st;
}

json focusing_json(const FlowerTable& table) {
  json arcs = json::array();
  for (std::size_t k = 0; k < table.size(); ++k) {
    const auto f = geometry::is_absolutely_focusing(table.arc(k));
    arcs.push_back({{"arc", k},
                    {"applicable", f.applicable},
                    {"pass_projection", f.pass_projection},
                    {"pass_angle", f.pass_angle},
                    {"projection", f.projection},
                    {"projection_limit", f.projection_limit},
                    {"angle", f.angle}});
  }
  return arcs;
}

json validation_json(const FlowerTable& table, std::size_t samples, std::uint64_t seed) {
  json v;
  v["kind"] = std::string(to_string(table.kind()));
  v["arcs"] = table.size();
  v["boundary_length"] = table.boundary_length();
  v["diameter"] = table.diameter();
  if (table.base()) {
    const auto rep = geometry::validate_structural(table);
    json arcs = json::array();
    for (const auto& a : rep.arcs) {
      arcs.push_back({{"arc", a.arc},
                      {"layer", a.layer},
                      {"crossed_lines", a.crossed_lines},
                      {"start_residual", a.start_residual},
                      {"end_residual", a.end_residual},
                      {"deepest_zone", a.deepest_zone},
                      {"ok", a.ok()}});
    }
    v["structural"] = {{"pass", rep.structural()}, {"arcs", arcs}};
  } else {
    v["structural"] = nullptr;
  }
  v["absolute_focusing"] = focusing_json(table);
  if (table.core().size() >= 3) {
    const auto d = geometry::defocusing_check(table, samples, seed);
    json premises = json::array();
    for (const auto& p : d.premises) premises.push_back({{"arc", p.arc}, {"boundary_crossings", p.boundary_crossings}});
    json worst = json::array();
    for (const auto& w : d.worst) {
      worst.push_back({{"arc_from", w.arc_from}, {"arc_to", w.arc_to}, {"from", {w.from.x, w.from.y}}, {"to", {w.to.x, w.to.y}}, {"margin", w.margin}});
    }
    v["defocusing"] = {{"chords_tested", d.chords_tested}, {"chords_passed", d.chords_passed},
                       {"pass_fraction", d.pass_fraction()}, {"premise_ok", d.premise_ok()},
                       {"premises", premises}, {"worst", worst}};
  } else {
    v["defocusing"] = nullptr;
  }
  return v;
}

dynamics::PhaseState initial_state(const FlowerTable& table, const Options& o) {
  if (o.s0 || o.phi0) return dynamics::make_state(table, o.s0.value_or(0.0), o.phi0.value_or(std::numbers::pi / 3.0));
  std::mt19937_64 rng(analysis::derive_seed(o.seed, 0));
  return analysis::sample_invariant_state(table, rng);
}

// First sampled state whose orbit of `bounces` links is labelled core.
std::optional<dynamics::PhaseState> find_core_state(const FlowerTable& table, const Options& o, std::size_t bounces) {
  for (std::size_t i = 0; i < o.samples; ++i) {
    std::mt19937_64 rng(analysis::derive_seed(o.seed, i));
    const auto st = analysis::sample_invariant_state(table, rng);
    const auto rec = dynamics::trace_orbit(table, st, bounces);
    if (analysis::classify_orbit(rec, table.core()).label == analysis::OrbitLabel::core) return st;
  }
  return std::nullopt;
}

json state_json(const dynamics::PhaseState& st) {
  return {{"arc", st.arc_index}, {"s", st.s}, {"phi", st.phi}, {"x", st.point.x}, {"y", st.point.y}};
}

void cmd_build(const Options& o, RunDir& run) {
  const FlowerTable table = obtain_table(o);
  run.write("table.json", geometry::serialize_table(table));
  run.write("validation.json", validation_json(table, o.samples, o.seed).dump(2) + "\n");
  run.write("table.svg", geometry::render_svg(table, load_style(o)));
}

int cmd_validate(const Options& o, RunDir& run) {
  const FlowerTable table = obtain_table(o);
  const json v = validation_json(table, o.samples, o.seed);
  run.write("validation.json", v.dump(2) + "\n");
  if (!v["structural"].is_null() && !v["structural"]["pass"].get<bool>()) {
    std::cerr << "validation: table is not structural (an arc crosses a side line)\n";
    return 2;
  }
  return 0;
}

void cmd_render(const Options& o, RunDir& run) {
  run.write("table.svg", geometry::render_svg(obtain_table(o), load_style(o)));
}

void cmd_simulate(const Options& o, RunDir& run) {
  const FlowerTable table = obtain_table(o);
  const auto rec = dynamics::trace_orbit(table, initial_state(table, o), o.bounces);
  std::ostringstream csv;
  dynamics::write_orbit_csv(csv, rec);
  run.write("orbit.csv", csv.str());
  run.count_termination(std::string(to_string(rec.termination)));
  const auto cls = analysis::classify_orbit(rec, table.core());
  run.write("summary.json", json{{"initial", state_json(rec.states.front())},
                                 {"links", rec.links.size()},
                                 {"termination", std::string(to_string(rec.termination))},
                                 {"class", std::string(to_string(cls.label))},
                                 {"crossing_fraction", cls.crossing_fraction},
                                 {"reason", cls.reason}}.dump(2) + "\n");
}

void cmd_classify(const Options& o, RunDir& run) {
  const FlowerTable table = obtain_table(o);
  if (o.samples == 0) throw Error(ErrorCode::invalid_parameter, "--samples must be positive");
  const auto classes = analysis::sample_classes(table, o.samples, o.bounces, o.seed, o.workers);
  analysis::ComponentFractions fr;
  fr.samples = classes.size();
  std::ostringstream per;
  per << "sample,class_label,crossing_fraction,links,reason\n";
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& c = classes[i];
    ++fr.counts[static_cast<std::size_t>(c.label)];
    per << i << ',' << to_string(c.label) << ',' << format_double(c.crossing_fraction) << ',' << c.bounces << ','
        << '"' << c.reason << "\"\n";
    if (c.bounces < o.bounces) run.count_termination("early_termination");
  }
  std::ostringstream csv;
  csv << "class_label,count,fraction,stderr\n";
  for (auto label : {analysis::OrbitLabel::core, analysis::OrbitLabel::track_cw, analysis::OrbitLabel::track_ccw,
                     analysis::OrbitLabel::undetermined}) {
    csv << to_string(label) << ',' << fr.counts[static_cast<std::size_t>(label)] << ',' << format_double(fr.fraction(label))
        << ',' << format_double(fr.stderr_of(label)) << '\n';
  }
  run.write("fractions.csv", csv.str());
  run.write("samples.csv", per.str());
}

void cmd_lyapunov(const Options& o, RunDir& run) {
  const FlowerTable table = obtain_table(o);
  std::optional<dynamics::PhaseState> st;
  if (o.s0 || o.phi0 || o.any_orbit) {
    st = initial_state(table, o);
  } else {
    st = find_core_state(table, o, 1000);
    if (!st) throw Error(ErrorCode::invalid_parameter, "no core-labelled orbit among the samples; use --any-orbit or --s/--phi");
  }
  const auto est = analysis::lyapunov_exponent(table, *st, o.bounces, o.checkpoints);
  std::ostringstream csv;
  csv << "checkpoint,bounces,lambda\n";
  for (std::size_t k = 0; k < est.convergence.size(); ++k) {
    csv << k + 1 << ',' << (k + 1) * o.bounces / est.convergence.size() << ',' << format_double(est.convergence[k]) << '\n';
  }
  run.write("lyapunov.csv", csv.str());
  run.count_termination(std::string(to_string(est.termination)));
  run.write("lyapunov.json", json{{"initial", state_json(*st)},
                                  {"lambda", est.lambda},
                                  {"stderr", est.stderr_},
                                  {"bounces", est.bounces},
                                  {"complete", est.complete},
                                  {"termination", std::string(to_string(est.termination))}}.dump(2) + "\n");
}

double observable_of(const std::string& name, const dynamics::PhaseState& st, double tau) {
  if (name == "cos_phi") return std::cos(st.phi);
  if (name == "s") return st.s;
  if (name == "tau") return tau;
  throw Error(ErrorCode::invalid_parameter, "unknown --observable '" + name + "' (cos_phi, s, tau)");
}

void cmd_correlate(const Options& o, RunDir& run) {
  const FlowerTable table = obtain_table(o);
  observable_of(o.observable, {}, 0.0);
  std::optional<dynamics::PhaseState> st;
  if (o.s0 || o.phi0 || o.any_orbit) {
    st = initial_state(table, o);
  } else {
    st = find_core_state(table, o, 1000);
    if (!st) throw Error(ErrorCode::invalid_parameter, "no core-labelled orbit among the samples; use --any-orbit or --s/--phi");
  }
  const auto rec = dynamics::trace_orbit(table, *st, o.bounces);
  run.count_termination(std::string(to_string(rec.termination)));
  std::vector<double> series;
  for (std::size_t k = 1; k < rec.states.size(); ++k) series.push_back(observable_of(o.observable, rec.states[k], rec.links[k - 1].tau));
  const auto fit = analysis::autocorrelation_decay(series, o.lags);
  std::ostringstream csv;
  csv << "lag,C\n";
  for (std::size_t k = 0; k < fit.autocorrelation.size(); ++k) csv << k << ',' << format_double(fit.autocorrelation[k]) << '\n';
  run.write("autocorrelation.csv", csv.str());
  const auto cls = analysis::classify_orbit(rec, table.core());
  run.write("decay.json", json{{"observable", o.observable},
                               {"orbit_class", std::string(to_string(cls.label))},
                               {"series_length", series.size()},
                               {"noise_floor", fit.noise_floor},
                               {"usable_lags", fit.usable_lags},
                               {"exp_rate", fit.exp_rate},
                               {"exp_residual", fit.exp_residual},
                               {"power_exponent", fit.power_exponent},
                               {"power_residual", fit.power_residual},
                               {"verdict", std::string(to_string(fit.verdict))},
                               {"note", fit.note}}.dump(2) + "\n");
}

void cmd_portrait(const Options& o, RunDir& run) {
  const FlowerTable table = obtain_table(o);
  std::vector<dynamics::PhaseState> initials;
  for (std::size_t i = 0; i < o.samples; ++i) {
    std::mt19937_64 rng(analysis::derive_seed(o.seed, i));
    initials.push_back(analysis::sample_invariant_state(table, rng));
  }
  const auto points = analysis::phase_portrait(table, initials, o.bounces);
  std::ostringstream csv;
  analysis::write_portrait_csv(csv, points);
  run.write("portrait.csv", csv.str());
  json scans = json::object();
  for (auto label : {analysis::OrbitLabel::core, analysis::OrbitLabel::track_cw, analysis::OrbitLabel::track_ccw,
                     analysis::OrbitLabel::undetermined}) {
    std::vector<analysis::PortraitPoint> sub;
    for (const auto& p : points)
      if (p.label == label) sub.push_back(p);
    const auto scan = analysis::occupancy_scan(sub, table.boundary_length(), o.grid);
    scans[std::string(to_string(label))] = {{"points", scan.points}, {"occupied_cells", scan.occupied},
                                            {"islands", scan.islands}, {"island_cells", scan.island_cells}, {"chi_square", scan.chi_square},
                                            {"dof", scan.dof}, {"no_island_at_resolution", scan.no_island_at_resolution()}};
  }
  run.write("occupancy.json", json{{"grid", o.grid}, {"classes", scans}}.dump(2) + "\n");
}

struct SweepRow {
  int n = 0;
  double b = 0.0;
  std::string status = "ok";
  std::string error;
  double defocusing = NAN;
  std::size_t proj_pass = 0, angle_pass = 0, arcs = 0;
  double lambda = NAN, lambda_stderr = NAN;
  analysis::ComponentFractions fractions;
};

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

void cmd_sweep(const Options& o, RunDir& run) {
  const auto ns = parse_numbers(o.n_values, "--n-values");
  const auto bs = parse_numbers(o.b_values, "--b-values");
  for (double n : ns)
    if (n != std::floor(n) || n < 3) throw Error(ErrorCode::invalid_parameter, "--n-values must be integers >= 3");
  double side = 1.0;
  if (o.base.rfind("regular:", 0) == 0) side = parse_numbers(o.base.substr(8), "--base").at(1);
  std::vector<SweepRow> rows;
  for (double n : ns)
    for (double b : bs) rows.push_back({static_cast<int>(n), b});

  std::mutex io;
  analysis::parallel_for(rows.size(), o.workers == 0 ? 0u : o.workers, [&](std::size_t i) {
    SweepRow& row = rows[i];
    const std::uint64_t seed = analysis::derive_seed(o.seed, i);
    std::ostringstream name;
    name << "points/n" << row.n << "-b" << format_double(row.b);
    try {
      const auto table = geometry::build_sol_flower(geometry::make_regular_polygon(row.n, side), row.b);
      run.write(name.str() + "/table.json", geometry::serialize_table(table));
      row.defocusing = geometry::defocusing_check(table, o.samples, seed).pass_fraction();
      for (const auto& arc : table.arcs()) {
        const auto f = geometry::is_absolutely_focusing(arc);
        row.proj_pass += f.pass_projection ? 1 : 0;
        row.angle_pass += f.pass_angle ? 1 : 0;
        ++row.arcs;
      }
      const auto classes = analysis::sample_classes(table, o.samples, o.bounces, seed, 1);
      row.fractions.samples = classes.size();
      std::optional<std::size_t> core_sample;
      for (std::size_t k = 0; k < classes.size(); ++k) {
        ++row.fractions.counts[static_cast<std::size_t>(classes[k].label)];
        if (!core_sample && classes[k].label == analysis::OrbitLabel::core) core_sample = k;
      }
      if (core_sample && o.bounces >= 1000) {
        std::mt19937_64 rng(analysis::derive_seed(seed, *core_sample));
        const auto est = analysis::lyapunov_exponent(table, analysis::sample_invariant_state(table, rng), o.bounces);
        row.lambda = est.lambda;
        row.lambda_stderr = est.stderr_;
      }
    } catch (const Error& e) {
      row.status = std::string(to_string(e.code()));
      row.error = e.what();
    }
    std::lock_guard lock(io);
    run.write(name.str() + "/point.json", json{{"n", row.n}, {"b", row.b}, {"status", row.status}, {"error", row.error}}.dump(2) + "\n");
  });

  std::ostringstream csv;
  csv << "n,b,status,error,defocusing_pass_fraction,abs_focus_projection_pass,abs_focus_angle_pass,arcs,lambda,"
         "lambda_stderr,core,track_cw,track_ccw,undetermined\n";
  for (const auto& r : rows) {
    using analysis::OrbitLabel;
    csv << r.n << ',' << format_double(r.b) << ',' << r.status << ',' << csv_quote(r.error) << ','
        << format_double(r.defocusing) << ',' << r.proj_pass << ',' << r.angle_pass << ',' << r.arcs << ','
        << format_double(r.lambda) << ',' << format_double(r.lambda_stderr) << ','
        << format_double(r.fractions.fraction(OrbitLabel::core)) << ','
        << format_double(r.fractions.fraction(OrbitLabel::track_cw)) << ','
        << format_double(r.fractions.fraction(OrbitLabel::track_ccw)) << ','
        << format_double(r.fractions.fraction(OrbitLabel::undetermined)) << '\n';
  }
  run.write("sweep.csv", csv.str());
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_parameter:
    case ErrorCode::invalid_layer:
    case ErrorCode::degenerate_foci:
    case ErrorCode::format_error:
      return 1;
    case ErrorCode::construction_failure:
    case ErrorCode::closure_failure:
    case ErrorCode::degenerate_core:
      return 2;
    default:
      return 3;
  }
}

fs::path run_path(const std::string& verb, const Options& o) {
  if (!o.out.empty()) return o.out;
  const char* root = std::getenv("EFLOWER_OUTPUT_ROOT");
  return fs::path(root && *root ? root : "runs") / (verb + "-seed" + std::to_string(o.seed));
}

// Refuses to reuse a non-empty directory unless it holds an earlier run.
void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  if (!fs::exists(dir, ec) || fs::is_empty(dir, ec)) return;
  if (!fs::exists(dir / "config.json")) {
    throw Error(ErrorCode::io_error, "output directory " + dir.string() + " is not empty and is not a run directory");
  }
  for (const auto& entry : fs::directory_iterator(dir)) fs::remove_all(entry.path());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elliptic flower billiards: construction, simulation and analysis"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options o;

  auto table_flags = [&](CLI::App* sub) {
    sub->add_option("--table", o.table_path, "Table file written by 'build'");
    sub->add_option("--base", o.base, "Base polygon: regular:n,l or x,y;x,y;...")->capture_default_str();
    sub->add_option("--kind", o.kind, "sol, caustic, ellipse or circle")->capture_default_str();
    sub->add_option("--b", o.b, "Semi-minor axis (sol, ellipse)");
    sub->add_option("--a", o.a, "Semi-major axis (ellipse)");
    sub->add_option("--rope", o.rope, "Rope length (caustic)");
    sub->add_option("--radius", o.radius, "Radius (circle)");
  };
  auto run_flags = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Run directory");
    sub->add_option("--seed", o.seed, "Master seed")->capture_default_str();
    sub->add_option("--n-bounces", o.bounces, "Bounces per orbit")->capture_default_str();
    sub->add_option("--samples", o.samples, "Sampled orbits or chords")->capture_default_str();
    sub->add_option("--workers", o.workers, "Worker threads (0: hardware)")->capture_default_str();
  };
  auto svg_flags = [&](CLI::App* sub) {
    sub->add_flag("--zones", o.zones, "Draw the side-line zone partition");
    sub->add_flag("--osculating", o.osculating, "Draw maximal osculating circles");
    sub->add_option("--style", o.style_path, "JSON file of style overrides");
  };
  auto start_flags = [&](CLI::App* sub) {
    sub->add_option("--s", o.s0, "Initial boundary coordinate");
    sub->add_option("--phi", o.phi0, "Initial angle in (0, pi)");
    sub->add_flag("--any-orbit", o.any_orbit, "Do not restrict to core-labelled orbits");
  };

  std::map<std::string, CLI::App*> subs;
  for (const char* name : {"build", "validate", "simulate", "classify", "lyapunov", "correlate", "portrait", "sweep", "render"}) {
    subs[name] = app.add_subcommand(name);
    table_flags(subs[name]);
    run_flags(subs[name]);
  }
  subs["build"]->description("Construct a table; write table.json, validation.json and table.svg");
  subs["validate"]->description("Structural, focusing and defocusing checks of a table");
  subs["simulate"]->description("Trace one orbit into orbit.csv");
  subs["classify"]->description("Component fractions over orbits sampled from the invariant measure");
  subs["lyapunov"]->description("Lyapunov exponent of one orbit");
  subs["correlate"]->description("Autocorrelation decay of an observable along one orbit");
  subs["portrait"]->description("Phase portrait points in (s, cos phi)");
  subs["sweep"]->description("Grid over base size n and semi-minor axis b of SOL flowers");
  subs["render"]->description("SVG rendering of a table");
  svg_flags(subs["build"]);
  svg_flags(subs["render"]);
  start_flags(subs["simulate"]);
  start_flags(subs["lyapunov"]);
  start_flags(subs["correlate"]);
  subs["lyapunov"]->add_option("--checkpoints", o.checkpoints, "Convergence checkpoints")->capture_default_str();
  subs["correlate"]->add_option("--lags", o.lags, "Largest lag")->capture_default_str();
  subs["correlate"]->add_option("--observable", o.observable, "cos_phi, s or tau")->capture_default_str();
  subs["portrait"]->add_option("--grid", o.grid, "Occupancy grid resolution")->capture_default_str();
  subs["sweep"]->add_option("--n-values", o.n_values, "Comma-separated base sizes")->capture_default_str();
  subs["sweep"]->add_option("--b-values", o.b_values, "Comma-separated semi-minor axes")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  std::string verb;
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) verb = name;

  std::optional<RunDir> run;
  try {
    const fs::path dir = run_path(verb, o);
    prepare_dir(dir);
    run.emplace(dir, options_json(verb, o));
    int status = 0;
    if (verb == "build") cmd_build(o, *run);
    if (verb == "validate") status = cmd_validate(o, *run);
    if (verb == "simulate") cmd_simulate(o, *run);
    if (verb == "classify") cmd_classify(o, *run);
    if (verb == "lyapunov") cmd_lyapunov(o, *run);
    if (verb == "correlate") cmd_correlate(o, *run);
    if (verb == "portrait") cmd_portrait(o, *run);
    if (verb == "sweep") cmd_sweep(o, *run);
    if (verb == "render") cmd_render(o, *run);
    run->finish(kVersion);
    std::cout << run->path().string() << '\n';
    return status;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (run) run->fail(e.code(), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error [runtime]: " << e.what() << '\n';
    if (run) run->fail(ErrorCode::io_error, e.what());
    return 3;
  }
}

}  // namespace eflower::cli

int main(int argc, char** argv) { return eflower::cli::main(argc, argv); }
