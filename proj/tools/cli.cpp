#include "cli.hpp"

#include "vk/io.hpp"
#include "vk/oracles.hpp"
#include "vk/robin.hpp"
#include "vk/smoothness.hpp"
#include "vk/svg.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <map>
#include <ostream>
#include <set>

namespace vk::cli {

namespace {

using json = nlohmann::ordered_json;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"run", {"output_dir", "workers", "seed"}},
      {"body", {"kind", "radius", "half_side", "n", "half_length", "ax", "ay", "angle", "vertices", "matrix", "shift"}},
      {"eval", {"point", "output"}},
      {"oracle", {"name", "point", "output"}},
      {"ellipse", {"gamma", "psi", "orientation", "c", "chart", "output"}},
      {"classify", {"point", "gamma", "psi", "orientation", "tolerance", "hessian_step", "output"}},
      {"scan", {"grids", "tolerance", "output"}},
      {"levelset", {"lambda", "resolution", "output"}},
      {"robin", {"point", "output"}},
      {"indicatrix", {"resolution", "theta_samples", "output"}},
      {"measure", {"phi", "resolution", "lambda", "theta_samples", "output"}},
      {"plot", {"kind", "resolution", "extent", "z2", "levels", "count", "phases", "tolerance", "output"}},
  };
  return keys;
}

ConfigError cli_error(const std::string& op, const std::string& what) { return ConfigError("cli", op, what); }

json pair(double x, double y) { return json::array({x, y}); }
json pair(cplx z) { return pair(z.real(), z.imag()); }
json pair(const Vec2& v) { return pair(v[0], v[1]); }
json point_json(const ComplexPoint2& z) { return json::array({pair(z.z1), pair(z.z2)}); }

json shape_json(const ShapeParam& s) {
  json j;
  j["chart"] = s.chart == Chart::first ? "first" : "second";
  j["c"] = pair(s.c);
  j["gamma"] = s.gamma;
  j["psi"] = s.psi;
  return j;
}

json contacts_json(const ContactReport& r) {
  json pts = json::array();
  for (const auto& p : r.points) {
    json c;
    c["t"] = p.t;
    c["point"] = pair(p.point);
    c["normal"] = pair(p.normal);
    c["body_curvature"] = p.body_curvature ? json(*p.body_curvature) : json(nullptr);
    c["ellipse_curvature"] = std::isfinite(p.ellipse_curvature) ? json(p.ellipse_curvature) : json("inf");
    c["on_flat_face"] = p.on_flat_face;
    pts.push_back(c);
  }
  return pts;
}

ComplexPoint2 get_point(const Config& cfg, const std::string& section) {
  const auto v = cfg.get_list(section, "point");
  if (v.size() != 4) throw cli_error(section, "point needs 4 reals (Re z1, Im z1, Re z2, Im z2)");
  return {cplx(v[0], v[1]), cplx(v[2], v[3])};
}

ShapeParam get_shape(const Config& cfg, const std::string& section) {
  if (cfg.has(section, "c")) {
    const auto v = cfg.get_list(section, "c");
    if (v.size() != 2) throw cli_error(section, "c needs 2 reals");
    const std::string chart = cfg.get_string(section, "chart", "first");
    if (chart != "first" && chart != "second") throw cli_error(section, "chart must be first or second");
    return shape_from_c(cplx(v[0], v[1]), chart == "first" ? Chart::first : Chart::second);
  }
  const double gamma = cfg.get_double(section, "gamma");
  const double psi = cfg.get_double(section, "psi");
  const int orientation = cfg.get_int(section, "orientation", 1);
  if (gamma < 0.0 || gamma > 1.0) throw cli_error(section, "gamma must lie in [0, 1]");
  if (orientation != 1 && orientation != -1) throw cli_error(section, "orientation must be 1 or -1");
  return c_from_shape(gamma, psi, orientation);
}

std::vector<int> get_grids(const Config& cfg, const std::string& section) {
  std::vector<int> out;
  const std::vector<double> v = cfg.has(section, "grids") ? cfg.get_list(section, "grids") : std::vector<double>{32, 64, 128};
  for (double g : v) {
    const int n = static_cast<int>(g);
    if (n != g || n < 32 || n > 4096 || (n & (n - 1)) != 0)
      throw cli_error(section, "grid sizes must be powers of two between 32 and 4096");
    out.push_back(n);
  }
  if (out.empty()) throw cli_error(section, "grids is empty");
  return out;
}

double get_lambda(const Config& cfg, const std::string& section, double fallback) {
  const double lambda = cfg.get_double(section, "lambda", fallback);
  if (!(lambda > 1.0)) throw cli_error(section, "lambda must exceed 1");
  return lambda;
}

struct Context {
  const RunConfig& rc;
  std::ostream& out;
  const Config& cfg() const { return rc.config; }

  std::string file(const std::string& section, const std::string& fallback) const {
    return cfg().get_string(section, "output", fallback);
  }
  void record(const std::string& section, json j) const {
    const std::string text = dump_json(j);
    write_output(rc.output_dir, file(section, section + ".json"), text);
    out << text;
  }
  void grid(const std::string& section, const CsvTable& table, json summary) const {
    const std::string path = write_output(rc.output_dir, file(section, section + ".csv"), table.str());
    summary["rows"] = static_cast<std::int64_t>(table.rows());
    summary["csv"] = path;
    out << dump_json(summary);
  }
};

json body_json(const ConvexBody& body) { return json(body.name()); }

void cmd_eval(const Context& ctx) {
  const ConvexBody body = body_from_config(ctx.cfg());
  const ComplexPoint2 z = get_point(ctx.cfg(), "eval");
  const LeafSolution s = eval_V(body, z);
  json j;
  j["command"] = "eval";
  j["body"] = body_json(body);
  j["point"] = point_json(z);
  j["V"] = s.value;
  j["shape"] = shape_json(s.shape);
  j["zeta"] = pair(s.zeta);
  j["residual"] = s.residual;
  j["on_body"] = s.on_body;
  j["used_fallback"] = s.used_fallback;
  ctx.record("eval", j);
}

void cmd_oracle(const Context& ctx) {
  const OracleFn o = named_oracle(ctx.cfg().get_string("oracle", "name"));
  const ComplexPoint2 z = get_point(ctx.cfg(), "oracle");
  json j;
  j["command"] = "oracle";
  j["oracle"] = o.name;
  j["domain"] = o.domain;
  j["point"] = point_json(z);
  j["V"] = o.eval(z);
  ctx.record("oracle", j);
}

void cmd_ellipse(const Context& ctx) {
  const ConvexBody body = body_from_config(ctx.cfg());
  const ShapeParam shape = get_shape(ctx.cfg(), "ellipse");
  const InscribedEllipse e = solve_extremal(body, shape);
  const ContactReport r = contact_points(body, e);
  json j;
  j["command"] = "ellipse";
  j["body"] = body_json(body);
  j["shape"] = shape_json(e.shape);
  j["a"] = pair(e.a);
  j["rho"] = e.rho;
  j["b"] = point_json(e.b);
  j["contacts"] = contacts_json(r);
  j["contact_class"] = to_string(r.count_class);
  j["unique"] = r.unique;
  ctx.record("ellipse", j);
}

void cmd_classify(const Context& ctx) {
  const Config& cfg = ctx.cfg();
  const ConvexBody body = body_from_config(cfg);
  const double tol = cfg.get_tolerance("classify", "tolerance", kMarginTol);
  ExtremalCache cache(body);
  json j;
  j["command"] = "classify";
  j["body"] = body_json(body);
  SmoothnessVerdict v;
  if (cfg.has("classify", "point")) {
    const ComplexPoint2 z = get_point(cfg, "classify");
    v = classify_point(cache, z, tol);
    j["point"] = point_json(z);
    if (cfg.has("classify", "hessian_step"))
      j["hessian_norm"] = pluriharmonic_test(cache, z, cfg.get_tolerance("classify", "hessian_step", 1e-3));
  } else {
    const InscribedEllipse e = cache.get(get_shape(cfg, "classify"));
    v = classify_leaf(body, e, tol);
  }
  j["leaf_case"] = to_string(v.leaf_case);
  j["verdict"] = to_string(v.verdict);
  j["curvature_margins"] = v.curvature_margins;
  j["contact_class"] = to_string(v.contacts.count_class);
  j["contacts"] = contacts_json(v.contacts);
  j["notes"] = v.notes;
  ctx.record("classify", j);
}

void cmd_scan(const Context& ctx) {
  const ConvexBody body = body_from_config(ctx.cfg());
  const std::vector<int> grids = get_grids(ctx.cfg(), "scan");
  const double tol = ctx.cfg().get_tolerance("scan", "tolerance", kMarginTol);
  const ScanReport rep = scan_bad_parameters(body, grids, tol);
  CsvTable t({"n", "gamma", "psi", "leaf_case", "flagged", "min_margin"});
  json levels = json::array();
  for (const auto& lv : rep.levels) {
    for (const auto& c : lv.cells)
      t.add_row({std::to_string(lv.n), format_number(c.gamma), format_number(c.psi), to_string(c.leaf_case),
                 c.flagged ? "1" : "0", format_number(c.min_margin)});
    json l;
    l["n"] = lv.n;
    l["spacing"] = lv.spacing;
    l["flagged_fraction"] = lv.flagged_fraction;
    levels.push_back(l);
  }
  json s;
  s["command"] = "scan";
  s["body"] = body_json(body);
  s["levels"] = levels;
  s["slope"] = rep.slope;
  write_output(ctx.rc.output_dir, "scan_summary.json", dump_json(s));
  ctx.grid("scan", t, s);
}

void cmd_levelset(const Context& ctx) {
  const ConvexBody body = body_from_config(ctx.cfg());
  const double lambda = get_lambda(ctx.cfg(), "levelset", 2.0);
  const int res = ctx.cfg().get_resolution("levelset", "resolution", 32);
  const auto samples = level_set(body, lambda, res);
  CsvTable t({"gamma", "psi", "chart", "re_c", "im_c", "theta", "re_z1", "im_z1", "re_z2", "im_z2"});
  for (const auto& s : samples)
    t.add_row({format_number(s.shape.gamma), format_number(s.shape.psi),
               s.shape.chart == Chart::first ? "first" : "second", format_number(s.shape.c.real()),
               format_number(s.shape.c.imag()), format_number(s.theta), format_number(s.z.z1.real()),
               format_number(s.z.z1.imag()), format_number(s.z.z2.real()), format_number(s.z.z2.imag())});
  json j;
  j["command"] = "levelset";
  j["body"] = body_json(body);
  j["lambda"] = lambda;
  j["resolution"] = res;
  ctx.grid("levelset", t, j);
}

void cmd_robin(const Context& ctx) {
  const ConvexBody body = body_from_config(ctx.cfg());
  const ComplexPoint2 w = get_point(ctx.cfg(), "robin");
  ExtremalCache cache(body);
  json j;
  j["command"] = "robin";
  j["body"] = body_json(body);
  j["point"] = point_json(w);
  j["rho"] = robin_value(cache, w);
  j["rho_limit"] = robin_limit(cache, w);
  ctx.record("robin", j);
}

void cmd_indicatrix(const Context& ctx) {
  const ConvexBody body = body_from_config(ctx.cfg());
  const int res = ctx.cfg().get_resolution("indicatrix", "resolution", 32);
  const int nt = ctx.cfg().get_int("indicatrix", "theta_samples", 16);
  if (nt < 1) throw cli_error("indicatrix", "theta_samples must be positive");
  const auto samples = indicatrix(body, res, nt);
  CsvTable t({"gamma", "psi", "theta", "re_w1", "im_w1", "re_w2", "im_w2", "x", "y"});
  for (const auto& s : samples)
    t.add_row({s.shape.gamma, s.shape.psi, s.theta, s.boundary_point.z1.real(), s.boundary_point.z1.imag(),
               s.boundary_point.z2.real(), s.boundary_point.z2.imag(), s.image[0], s.image[1]});
  json j;
  j["command"] = "indicatrix";
  j["body"] = body_json(body);
  j["resolution"] = res;
  j["theta_samples"] = nt;
  ctx.grid("indicatrix", t, j);
}

void cmd_measure(const Context& ctx) {
  const ConvexBody body = body_from_config(ctx.cfg());
  const std::string phi = ctx.cfg().get_string("measure", "phi", "1");
  const PlaneFn f = named_test_function(phi);
  const int res = ctx.cfg().get_resolution("measure", "resolution", 64);
  const double lambda = get_lambda(ctx.cfg(), "measure", 1.05);
  const int nt = ctx.cfg().get_int("measure", "theta_samples", 64);
  if (nt < 1) throw cli_error("measure", "theta_samples must be positive");
  const PushforwardResult r = pushforward_integral(body, f, res, lambda, nt);
  json j;
  j["command"] = "measure";
  j["body"] = body_json(body);
  j["phi"] = phi;
  j["resolution"] = res;
  j["lambda"] = lambda;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["relative_gap"] = r.relative_gap;
  j["mass"] = r.mass;
  ctx.record("measure", j);
}

// --- plots

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::vector<Vec2> body_outline(const ConvexBody& body, int n = 512) {
  std::vector<Vec2> pts;
  for (int k = 0; k < n; ++k) pts.push_back(body.boundary(kTwoPi * k / n));
  return pts;
}

std::pair<Vec2, Vec2> body_box(const ConvexBody& body) {
  const double hx = body.support(Vec2(1, 0)), lx = -body.support(Vec2(-1, 0));
  const double hy = body.support(Vec2(0, 1)), ly = -body.support(Vec2(0, -1));
  const double m = 0.08 * std::max(hx - lx, hy - ly);
  return {Vec2(lx - m, ly - m), Vec2(hx + m, hy + m)};
}

std::string plot_levelset(const Config& cfg, const ConvexBody& body) {
  const int n = cfg.get_resolution("plot", "resolution", 64);
  const double extent = cfg.get_tolerance("plot", "extent", 2.5);
  cplx z2 = 0.0;
  if (cfg.has("plot", "z2")) {
    const auto v = cfg.get_list("plot", "z2");
    if (v.size() != 2) throw cli_error("plot", "z2 needs 2 reals");
    z2 = cplx(v[0], v[1]);
  }
  const std::vector<double> levels =
      cfg.has("plot", "levels") ? cfg.get_list("plot", "levels") : std::vector<double>{0.1, 0.25, 0.5, 1.0};
  ExtremalCache cache(body);
  std::vector<double> values(static_cast<std::size_t>(n) * n, std::nan(""));
  const auto coord = [&](int k) { return -extent + 2.0 * extent * k / (n - 1); };
  for_each_index(n, Exec::parallel, [&](std::int64_t row) {
    LeafSolution prev;
    bool have = false;
    for (int i = 0; i < n; ++i) {
      const ComplexPoint2 z(cplx(coord(i), coord(static_cast<int>(row))), z2);
      try {
        const LeafSolution s = have ? eval_V_from(cache, z, prev) : eval_V(cache, z);
        values[static_cast<std::size_t>(row * n + i)] = s.value;
        have = !s.on_body;
        if (have) prev = s;
      } catch (const Error&) {
        have = false;
      }
    }
  });
  SvgPlot p(640, 640, -extent, extent, -extent, extent);
  p.frame("Re z1", "Im z1");
  for (std::size_t k = 0; k < levels.size(); ++k)
    for (const auto& [a, b] : contour_segments(values, n, n, -extent, extent, -extent, extent, levels[k]))
      p.segment(a, b, kPalette[k % 6], 1.2);
  return p.str();
}

std::string plot_foliation(const Config& cfg, const ConvexBody& body) {
  const int m = cfg.get_int("plot", "count", 8);
  if (m < 1 || m > 256) throw cli_error("plot", "count must lie in [1, 256]");
  ExtremalCache cache(body);
  std::vector<std::vector<Vec2>> traces(static_cast<std::size_t>(m) * m);
  for_each_index(static_cast<std::int64_t>(m) * m, Exec::parallel, [&](std::int64_t k) {
    const int i = static_cast<int>(k / m), j = static_cast<int>(k % m);
    try {
      const InscribedEllipse e = cache.get(c_from_shape((i + 1.0) / m, kPi * j / m, 1));
      for (int s = 0; s <= 128; ++s) traces[static_cast<std::size_t>(k)].push_back(ellipse_real_point(e, kTwoPi * s / 128));
    } catch (const Error&) {
    }
  });
  const auto [lo, hi] = body_box(body);
  SvgPlot p(640, 640, lo[0], hi[0], lo[1], hi[1]);
  p.frame("x", "y");
  for (std::size_t k = 0; k < traces.size(); ++k) p.polyline(traces[k], kPalette[(k / m) % 6], 0.6);
  p.polyline(body_outline(body), "black", 1.5, true);
  return p.str();
}

std::string plot_flagged(const Config& cfg, const ConvexBody& body) {
  const int n = cfg.get_resolution("plot", "resolution", 64);
  const double tol = cfg.get_tolerance("plot", "tolerance", kMarginTol);
  const ScanReport rep = scan_bad_parameters(body, {n}, tol);
  const double dg = 1.0 / n, dp = kPi / n;
  SvgPlot p(640, 640, 0.0, 1.0 + dg, 0.0, kPi);
  for (const auto& c : rep.levels.front().cells)
    p.rect(Vec2(c.gamma, c.psi), Vec2(c.gamma + dg, c.psi + dp), c.flagged ? "#d62728" : "#eeeeee");
  p.frame("gamma", "psi");
  return p.str();
}

std::string plot_indicatrix(const Config& cfg, const ConvexBody& body) {
  const int n = cfg.get_resolution("plot", "resolution", 128);
  const std::vector<double> phases =
      cfg.has("plot", "phases") ? cfg.get_list("plot", "phases") : std::vector<double>{kPi / 4, kPi / 2};
  ExtremalCache cache(body);
  std::vector<std::vector<Vec2>> curves(phases.size(), std::vector<Vec2>(static_cast<std::size_t>(n)));
  double r_max = 0.0;
  for (std::size_t k = 0; k < phases.size(); ++k) {
    std::vector<Vec2>& c = curves[k];
    const cplx ph = std::polar(1.0, phases[k]);
    for_each_index(n, Exec::parallel, [&](std::int64_t i) {
      const double s = kTwoPi * static_cast<double>(i) / n;
      const ComplexPoint2 u(cplx(std::cos(s)), ph * std::sin(s));
      double r = std::nan("");
      try {
        r = std::exp(-robin_value(cache, u));
      } catch (const Error&) {
      }
      c[static_cast<std::size_t>(i)] = r * Vec2(std::cos(s), std::sin(s));
    });
    for (const auto& q : c)
      if (std::isfinite(q[0])) r_max = std::max(r_max, q.norm());
  }
  if (!(r_max > 0.0)) throw NumericError("cli", "plot", "no indicatrix samples", 0.0);
  const double e = 1.1 * r_max;
  SvgPlot p(640, 640, -e, e, -e, e);
  p.frame("|w1| cos", "|w2| sin");
  for (std::size_t k = 0; k < curves.size(); ++k) {
    std::vector<Vec2> good;
    for (const auto& q : curves[k])
      if (std::isfinite(q[0])) good.push_back(q);
    p.polyline(good, kPalette[k % 6], 1.2, true);
  }
  return p.str();
}

void cmd_plot(const Context& ctx) {
  const Config& cfg = ctx.cfg();
  const std::string kind = cfg.get_string("plot", "kind");
  const ConvexBody body = body_from_config(cfg);
  std::string svg;
  if (kind == "levelset") svg = plot_levelset(cfg, body);
  else if (kind == "foliation") svg = plot_foliation(cfg, body);
  else if (kind == "flagged") svg = plot_flagged(cfg, body);
  else if (kind == "indicatrix") svg = plot_indicatrix(cfg, body);
  else throw cli_error("plot", "unknown plot kind '" + kind + "' (levelset, foliation, flagged, indicatrix)");
  const std::string path = write_output(ctx.rc.output_dir, cfg.get_string("plot", "output", "plot_" + kind + ".svg"), svg);
  json j;
  j["command"] = "plot";
  j["kind"] = kind;
  j["body"] = body_json(body);
  j["svg"] = path;
  ctx.out << dump_json(j);
}

}  // namespace

RunConfig make_run_config(Config cfg, const std::string& command) {
  const auto& keys = known_keys();
  if (!keys.count(command) || command == "run" || command == "body")
    throw cli_error("run", "unknown command '" + command + "'");
  for (const auto& sec : cfg.sections()) {
    auto it = keys.find(sec);
    if (it == keys.end()) throw cli_error("config", cfg.source() + ": unknown section [" + sec + "]");
    for (const auto& k : cfg.keys(sec))
      if (!it->second.count(k)) throw cli_error("config", cfg.source() + ": unknown key '" + k + "' in [" + sec + "]");
  }
  RunConfig rc;
  rc.command = command;
  rc.output_dir = cfg.get_string("run", "output_dir", ".");
  rc.workers = cfg.get_int("run", "workers", 0);
  const double seed = cfg.get_double("run", "seed", 0.0);
  if (seed < 0 || seed != std::floor(seed)) throw cli_error("config", "seed must be a nonnegative integer");
  rc.seed = static_cast<std::uint64_t>(seed);
  if (const char* dir = std::getenv("VK_OUTPUT_DIR"); dir && *dir) rc.output_dir = dir;
  if (const char* w = std::getenv("VK_WORKERS"); w && *w) {
    Config env;
    env.set("run", "workers", w);
    rc.workers = env.get_int("run", "workers");
  }
  if (rc.workers < 0) throw cli_error("config", "workers must be nonnegative");
  rc.config = std::move(cfg);
  return rc;
}

int run(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  try {
    set_worker_count(rc.workers);
    const Context ctx{rc, out};
    static const std::map<std::string, void (*)(const Context&)> table = {
        {"eval", cmd_eval},         {"oracle", cmd_oracle},       {"ellipse", cmd_ellipse},
        {"classify", cmd_classify}, {"scan", cmd_scan},           {"levelset", cmd_levelset},
        {"robin", cmd_robin},       {"indicatrix", cmd_indicatrix}, {"measure", cmd_measure},
        {"plot", cmd_plot}};
    auto it = table.find(rc.command);
    if (it == table.end()) throw cli_error("run", "unknown command '" + rc.command + "'");
    it->second(ctx);
    return 0;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: cli::" << rc.command << ": " << e.what() << '\n';
    return 3;
  }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extremal functions of planar convex bodies"};
  app.name("vk");
  app.require_subcommand(1, 1);
  app.fallthrough();
  std::string config_path, body_kind;
  std::vector<std::string> sets;
  app.add_option("-c,--config", config_path, "Configuration file");
  app.add_option("-s,--set", sets, "Override as section.key=value")
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  app.add_option("--body", body_kind, "Body kind (sets body.kind)");

  static const std::map<std::string, std::vector<std::string>> flags = {
      {"eval", {"point"}},
      {"oracle", {"name", "point"}},
      {"ellipse", {"gamma", "psi", "orientation", "c", "chart"}},
      {"classify", {"point", "gamma", "psi", "orientation", "tolerance", "hessian-step"}},
      {"scan", {"grids", "tolerance"}},
      {"levelset", {"lambda", "resolution"}},
      {"robin", {"point"}},
      {"indicatrix", {"resolution", "theta-samples"}},
      {"measure", {"phi", "resolution", "lambda", "theta-samples"}},
      {"plot", {"resolution", "extent", "z2", "levels", "count", "phases", "tolerance"}},
  };
  std::map<std::string, std::map<std::string, std::string>> values;
  std::string plot_kind;
  static const std::map<std::string, std::string> help = {
      {"eval", "V at a point of C^2 (JSON)"},
      {"oracle", "Closed-form extremal function at a point (JSON)"},
      {"ellipse", "Extremal inscribed ellipse of one shape (JSON)"},
      {"classify", "Smoothness verdict for a point or a leaf (JSON)"},
      {"scan", "Flagged shape parameters over refining grids (CSV)"},
      {"levelset", "Samples of a level set of V (CSV)"},
      {"robin", "Robin function at a direction (JSON)"},
      {"indicatrix", "Samples of the indicatrix boundary (CSV)"},
      {"measure", "Level-set flux against the boundary measure (JSON)"},
      {"plot", "SVG figure: levelset, foliation, flagged or indicatrix"},
  };
  for (const auto& cmd : kCommands) {
    CLI::App* sub = app.add_subcommand(cmd, help.at(cmd));
    auto& v = values[cmd];
    for (const auto& f : flags.at(cmd)) sub->add_option("--" + f, v[f]);
    sub->add_option("-o,--output", v["output"], "Output file name inside the output directory");
    if (cmd == "plot") sub->add_option("kind", plot_kind, "levelset, foliation, flagged or indicatrix");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    Config cfg = config_path.empty() ? Config::parse("", "<command line>") : Config::load(config_path);
    for (const auto& s : sets) {
      const auto dot = s.find('.'), eq = s.find('=');
      if (dot == std::string::npos || eq == std::string::npos || dot > eq)
        throw cli_error("config", "--set expects section.key=value, got '" + s + "'");
      cfg.set(s.substr(0, dot), s.substr(dot + 1, eq - dot - 1), s.substr(eq + 1));
    }
    if (!body_kind.empty()) cfg.set("body", "kind", body_kind);
    for (const auto& [flag, value] : values[command]) {
      if (value.empty()) continue;
      std::string key = flag;
      std::replace(key.begin(), key.end(), '-', '_');
      cfg.set(command, key, value);
    }
    if (!plot_kind.empty()) cfg.set("plot", "kind", plot_kind);
    return run(make_run_config(std::move(cfg), command), out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace vk::cli
