// fglab — Fefferman-Graham expansion laboratory for conformally compact
// Einstein metrics. Subcommands wrap the library modules; outputs are JSON
// reports and CSV curves, deterministic for a fixed config + seed.
#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <random>

#include "fglab/acceptance.hpp"
#include "fglab/calculus.hpp"
#include "fglab/config.hpp"
#include "fglab/constraint_lab.hpp"
#include "fglab/diagnostics.hpp"
#include "fglab/errors.hpp"
#include "fglab/exact.hpp"
#include "fglab/io.hpp"
#include "fglab/random.hpp"

namespace {

using nlohmann::json;
using namespace fglab;

std::filesystem::path output_dir(const RunConfig& cfg) {
  std::string dir = cfg.out_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv("FGLAB_OUTPUT_DIR")) dir = env;
  }
  if (dir.empty()) dir = ".";
  std::filesystem::create_directories(dir);
  return dir;
}

json report_header(const RunConfig& cfg) {
  json j;
  j["schema"] = kSchema;
  j["version"] = kVersion;
  j["config_hash"] = cfg.hash();
  j["seed"] = cfg.seed;
  j["tolerances"] = {{"ode", cfg.ode_tol}, {"fit", cfg.fit_tol}, {"identity", cfg.identity_tol}};
  return j;
}

std::function<double(double)> profile(const std::string& name) {
  if (name == "sin") return [](double x) { return std::sin(x); };
  if (name == "cos") return [](double x) { return std::cos(x); };
  if (name == "const") return [](double) { return 1.0; };
  reject("bad-profile", "unknown profile f: " + name);
}

void apply_preset(RunConfig& cfg) {
  if (cfg.preset.empty()) return;
  if (cfg.preset == "poincare") {
    cfg.model_kind = "RoundSphere";
    cfg.n = 3;
    cfg.radius = 1.0;
    cfg.g_n_scale = 0.0;
  } else if (cfg.preset == "cusp") {
    cfg.model_kind = "FlatTorus";
    cfg.n = 3;
    cfg.g_n_scale = 0.0;
  } else if (cfg.preset == "schwarzschild") {
    cfg.model_kind = "CircleSphere";
    cfg.n = 3;
    const SchwarzschildParams p = make_schwarzschild(3, cfg.mass);
    cfg.beta = p.beta;
    cfg.sphere_radius = 1.0;
  } else if (cfg.preset == "resonance") {
    // n even with K >= n and no log opt-in: the defined rejection path
    cfg.model_kind = "CircleSphere";
    cfg.n = 4;
    cfg.beta = std::numbers::pi;
    cfg.sphere_radius = 1.0;
    cfg.K = 6;
  } else {
    reject("bad-preset", "unknown preset: " + cfg.preset);
  }
}

SymTensorField preset_g_n(const RunConfig& cfg, const BoundaryModel& m) {
  if (cfg.preset == "schwarzschild")
    return SymTensorField::from_blocks(m, {-4.0 * cfg.mass / 3.0, 2.0 * cfg.mass / 3.0});
  if (m.kind == ModelKind::FlatTorus && cfg.g_n_scale != 0.0) {
    SymTensorField g = example53(m.n, profile(cfg.f_name), m);
    g *= cfg.g_n_scale;
    return g;
  }
  if (m.kind == ModelKind::CircleSphere && cfg.g_n_scale != 0.0) {
    const auto gb = m.metric_blocks();
    return SymTensorField::from_blocks(
        m, {-(m.n - 1) * cfg.g_n_scale * gb[0] / gb[1], cfg.g_n_scale});
  }
  return SymTensorField::zero(m);
}

int cmd_fg_expand(const RunConfig& cfg, bool allow_log) {
  const BoundaryModel m = cfg.make_model();
  cfg.validate_for(m.n);
  ExpandOptions eo;
  eo.allow_log_detection = allow_log;
  const FGSeries s = expand(metric_of(m), preset_g_n(cfg, m), cfg.K, eo);
  // residual-slope report: ‖F‖ at a few t, log-log slope
  json rep = report_header(cfg);
  json slopes = json::array();
  double prev_t = 0.0, prev_r = 0.0;
  for (double t : {0.02, 0.04, 0.08, 0.16}) {
    const double r = radial_residual_norm(s, t);
    json row = {{"t", t}, {"residual", r}};
    if (prev_t > 0.0 && prev_r > 0.0 && r > 0.0)
      row["slope"] = std::log(r / prev_r) / std::log(t / prev_t);
    slopes.push_back(row);
    prev_t = t;
    prev_r = r;
  }
  rep["residuals"] = slopes;
  rep["series_file"] = "series.json";
  const auto dir = output_dir(cfg);
  write_text_file((dir / "series.json").string(), to_json(s).dump(2) + "\n");
  std::cout << rep.dump(2) << "\n";
  return 0;
}

int cmd_evolve(const RunConfig& cfg) {
  const BoundaryModel m = cfg.make_model();
  cfg.validate_for(m.n);
  ExpandOptions eo;
  eo.t_max = std::max(cfg.t1, m.kind == ModelKind::RoundSphere ? 1.0 : 0.5);
  const FGSeries s = expand(metric_of(m), preset_g_n(cfg, m), cfg.K, eo);
  const MetricCurve c = evolve(s, cfg.t0, cfg.t1, cfg.ode_tol);
  const ConstraintReport res = constraint_residuals(c);
  const auto dir = output_dir(cfg);
  write_curve_csv(c, &res, (dir / "curve.csv").string());
  json rep = report_header(cfg);
  rep["status"] = c.status == CurveStatus::Ok ? "ok" : "lost-positivity";
  if (c.status == CurveStatus::LostPositivity) rep["failure_t"] = c.failure_t;
  rep["samples"] = c.t_grid.size();
  rep["max_divergence_residual"] = res.max_divergence;
  rep["max_hamiltonian_residual"] = res.max_hamiltonian;
  rep["max_riccati_trace_residual"] = res.max_riccati_trace;
  rep["curve_file"] = "curve.csv";
  std::cout << rep.dump(2) << "\n";
  return c.status == CurveStatus::Ok ? 0 : 1;
}

int cmd_constraints(const RunConfig& cfg) {
  const BoundaryModel m = cfg.make_model();
  MetricCurve c;
  if (cfg.preset == "schwarzschild") {
    const SchwarzschildParams p = make_schwarzschild(m.n, cfg.mass);
    std::vector<double> ts;
    const double tp = schwarzschild_t_plus(p);
    for (int i = 0; i < 400; ++i) ts.push_back(cfg.t0 + (0.9 * tp - cfg.t0) * i / 399.0);
    c = schwarzschild_fg_curve(p, ts);
  } else if (cfg.preset == "poincare") {
    std::vector<double> ts;
    for (int i = 0; i < 400; ++i) ts.push_back(cfg.t0 + (cfg.t1 - cfg.t0) * i / 399.0);
    c = poincare_curve(m.n, ts, cfg.radius);
  } else {
    std::vector<double> ts;
    for (int i = 0; i < 400; ++i) ts.push_back(cfg.t0 + (cfg.t1 - cfg.t0) * i / 399.0);
    c = cone_metric_curve(metric_of(m), ts);
  }
  const ConstraintReport res = constraint_residuals(c);
  const auto dir = output_dir(cfg);
  write_curve_csv(c, &res, (dir / "curve.csv").string());
  json rep = report_header(cfg);
  rep["report"] = to_json(res);
  rep["curve_file"] = "curve.csv";
  std::cout << rep.dump(2) << "\n";
  return 0;
}

int cmd_schwarzschild(const RunConfig& cfg) {
  const SchwarzschildParams p = make_schwarzschild(cfg.n, cfg.mass);
  const BetaMaxResult bm = schwarzschild_beta_max(cfg.n);
  json rep = report_header(cfg);
  rep["n"] = p.n;
  rep["m"] = p.m;
  rep["rPlus"] = p.r_plus;
  rep["beta"] = p.beta;
  rep["V_residual"] = std::abs(schwarzschild_V(p.n, p.m, p.r_plus));
  rep["t_plus"] = schwarzschild_t_plus(p);
  rep["beta_max"] = {{"r_plus_star", bm.r_plus_star},
                     {"numeric", bm.beta_max},
                     {"stationary_value", bm.stationary_value},
                     {"printed_formula", bm.printed_formula},
                     {"printed_formula_discrepancy", bm.printed_formula - bm.beta_max}};
  std::cout << rep.dump(2) << "\n";
  return 0;
}

int cmd_torus_example(const RunConfig& cfg) {
  BoundaryModel m = BoundaryModel::flat_torus(cfg.n, cfg.period, cfg.resolution);
  const SymTensorField gamma = metric_of(m);
  const auto f = profile(cfg.f_name);
  const SymTensorField tau = example53(cfg.n, f, m);
  // h = L_{∂1} tau — the canonical obstruction direction
  const SymTensorField h = lie_derivative(VectorField::coordinate_axis(m, 0), tau);
  const IdentityReport rep = verify_identity_5_9(gamma, VectorField::coordinate_axis(m, 0),
                                                 tau, h);
  const std::vector<double> proj = obstruction_projection(gamma, tau, h);
  json out = report_header(cfg);
  out["identity"] = to_json(rep, tau, h, cfg.identity_tol);
  out["obstruction_projection"] = proj;
  const MembershipReport mem = check_membership({gamma, tau});
  out["membership"] = {{"divergence_residual", mem.divergence_residual},
                       {"trace_residual", mem.trace_residual},
                       {"advisory", mem.advisory}};
  std::cout << out.dump(2) << "\n";
  return rep.residual <= cfg.identity_tol ? 0 : 1;
}

int cmd_decay(const RunConfig& cfg, bool identical) {
  const BoundaryModel m = cfg.make_model();
  if (m.kind != ModelKind::CircleSphere)
    reject("bad-model", "decay experiment runs on CircleSphere data");
  const SymTensorField gamma = metric_of(m);
  const auto gb = m.metric_blocks();
  const double scale = cfg.g_n_scale != 0.0 ? cfg.g_n_scale : 1.0;
  const SymTensorField gB = SymTensorField::from_blocks(
      m, {-(m.n - 1) * scale * gb[0] / gb[1], scale});
  const SymTensorField gA = identical ? gB : SymTensorField::zero(m);
  UniqueContinuationOptions opts;
  opts.ode_tol = cfg.ode_tol;
  const UniqueContinuationResult res = unique_continuation_experiment(gamma, gA, gB, opts);
  json rep = report_header(cfg);
  rep["trace_free"] = {{"exponent", res.trace_free.exponent},
                       {"r_squared", res.trace_free.r_squared},
                       {"floor_hit", res.trace_free.floor_hit}};
  rep["trace"] = {{"exponent", res.trace.exponent},
                  {"r_squared", res.trace.r_squared},
                  {"floor_hit", res.trace.floor_hit}};
  rep["max_difference"] = res.max_difference;
  std::cout << rep.dump(2) << "\n";
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  auto results = run_acceptance(std::cout, cfg.seed);
  return all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fglab: Fefferman-Graham expansions, radial reconstruction and "
               "boundary constraint experiments for conformally compact Einstein metrics"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string config_file;
  bool allow_log = false, identical = false;

  app.add_option("--config", config_file, "key-value config file");
  app.add_option("--out", cfg.out_dir, "output directory (default: $FGLAB_OUTPUT_DIR or .)");
  app.add_option("--seed", cfg.seed, "RNG seed for randomized batches");
  app.add_option("--model", cfg.model_kind, "FlatTorus | RoundSphere | CircleSphere");
  app.add_option("--n", cfg.n, "boundary dimension");
  app.add_option("--resolution", cfg.resolution, "torus grid resolution per axis");
  app.add_option("--radius", cfg.radius, "sphere radius");
  app.add_option("--beta", cfg.beta, "circle length");
  app.add_option("--sphere-radius", cfg.sphere_radius, "product sphere radius");
  app.add_option("--m", cfg.mass, "Schwarzschild mass");
  app.add_option("--gn-scale", cfg.g_n_scale, "scale of the TT datum g_(n)");
  app.add_option("--f", cfg.f_name, "profile f(theta1): sin | cos | const");
  app.add_option("--ode-tol", cfg.ode_tol, "evolution tolerance");
  app.add_option("--K", cfg.K, "series truncation order");
  app.add_option("--t0", cfg.t0, "evolution start");
  app.add_option("--t1", cfg.t1, "evolution end");
  app.add_option("--preset", cfg.preset, "poincare | cusp | schwarzschild | resonance");

  auto* sub_expand = app.add_subcommand("fg-expand", "compute an FG series, write series.json");
  sub_expand->add_flag("--allow-log", allow_log, "opt into even-n log detection");
  auto* sub_evolve = app.add_subcommand("evolve", "seed from a series and integrate radially");
  auto* sub_constraints = app.add_subcommand("constraints", "constraint residuals of a preset curve");
  auto* sub_schw = app.add_subcommand("schwarzschild", "horizon, period and period maximum");
  auto* sub_torus = app.add_subcommand("torus-example", "flat-torus identity and obstruction run");
  auto* sub_decay = app.add_subcommand("decay", "unique-continuation decay experiment");
  sub_decay->add_flag("--identical", identical, "use identical Cauchy data for both curves");
  auto* sub_verify = app.add_subcommand("verify", "run the full acceptance suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_file.empty()) {
      // file values fill in everything the command line did not set explicitly
      const RunConfig flags = cfg;
      cfg = RunConfig{};
      apply_config_map(cfg, parse_config_file(config_file));
      if (app.count("--model")) cfg.model_kind = flags.model_kind;
      if (app.count("--n")) cfg.n = flags.n;
      if (app.count("--resolution")) cfg.resolution = flags.resolution;
      if (app.count("--radius")) cfg.radius = flags.radius;
      if (app.count("--beta")) cfg.beta = flags.beta;
      if (app.count("--sphere-radius")) cfg.sphere_radius = flags.sphere_radius;
      if (app.count("--m")) cfg.mass = flags.mass;
      if (app.count("--gn-scale")) cfg.g_n_scale = flags.g_n_scale;
      if (app.count("--f")) cfg.f_name = flags.f_name;
      if (app.count("--ode-tol")) cfg.ode_tol = flags.ode_tol;
      if (app.count("--K")) cfg.K = flags.K;
      if (app.count("--t0")) cfg.t0 = flags.t0;
      if (app.count("--t1")) cfg.t1 = flags.t1;
      if (app.count("--preset")) cfg.preset = flags.preset;
      if (app.count("--seed")) cfg.seed = flags.seed;
      if (app.count("--out")) cfg.out_dir = flags.out_dir;
    }
    apply_preset(cfg);
    if (sub_expand->parsed()) {
      cfg.command = "fg-expand";
      return cmd_fg_expand(cfg, allow_log);
    }
    if (sub_evolve->parsed()) {
      cfg.command = "evolve";
      return cmd_evolve(cfg);
    }
    if (sub_constraints->parsed()) {
      cfg.command = "constraints";
      return cmd_constraints(cfg);
    }
    if (sub_schw->parsed()) {
      cfg.command = "schwarzschild";
      return cmd_schwarzschild(cfg);
    }
    if (sub_torus->parsed()) {
      cfg.command = "torus-example";
      return cmd_torus_example(cfg);
    }
    if (sub_decay->parsed()) {
      cfg.command = "decay";
      return cmd_decay(cfg, identical);
    }
    if (sub_verify->parsed()) {
      cfg.command = "verify";
      return cmd_verify(cfg);
    }
  } catch (const Error& e) {
    nlohmann::json err = {{"error",
                           {{"kind", e.kind() == ErrorKind::RejectedInput ? "rejected-input"
                                                                          : "numerical-failure"},
                            {"code", e.code()},
                            {"message", e.what()}}}};
    std::cout << err.dump(2) << "\n";
    return e.kind() == ErrorKind::RejectedInput ? 2 : 1;
  } catch (const std::exception& e) {
    nlohmann::json err = {{"error", {{"kind", "numerical-failure"}, {"message", e.what()}}}};
    std::cout << err.dump(2) << "\n";
    return 1;
  }
  return 0;
}
