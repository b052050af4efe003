#include "fglab/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "fglab/calculus.hpp"
#include "fglab/constraint_lab.hpp"
#include "fglab/diagnostics.hpp"
#include "fglab/exact.hpp"
#include "fglab/random.hpp"

namespace fglab {

namespace {

constexpr double kPi = std::numbers::pi;

struct Runner {
  std::ostream& log;
  std::vector<CriterionResult> results;

  template <class F>
  void criterion(int id, const std::string& name, F&& body) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    const auto start = std::chrono::steady_clock::now();
    std::ostringstream detail;
    try {
      r.pass = body(detail);
    } catch (const std::exception& e) {
      r.pass = false;
      detail << "exception: " << e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.detail = detail.str();
    log << (r.pass ? "PASS" : "FAIL") << " criterion " << id << " [" << name << "] "
        << r.detail << " (" << r.seconds << " s)\n";
    results.push_back(std::move(r));
  }
};

double max_rel_err_vs_poincare(const MetricCurve& c) {
  double worst = 0.0;
  for (std::size_t s = 0; s < c.t_grid.size(); ++s) {
    const double t = c.t_grid[s];
    const double exact = (1.0 - t * t / 4.0) * (1.0 - t * t / 4.0);
    worst = std::max(worst, std::abs(c.values[s].data[0] - exact) / exact);
  }
  return worst;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::ostream& log, unsigned long long seed) {
  Runner R{log, {}};

  // 1. Schwarzschild arithmetic
  R.criterion(1, "schwarzschild-arithmetic", [&](std::ostringstream& d) {
    const auto start = std::chrono::steady_clock::now();
    const double rp = schwarzschild_rplus(3, 1.0);
    const double beta = schwarzschild_beta(3, rp);
    const double vres = std::abs(schwarzschild_V(3, 1.0, rp));
    const double beta_err = std::abs(beta - kPi);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    d << "|V(r+)|=" << vres << " |beta-pi|=" << beta_err;
    return vres <= 1e-12 && beta_err <= 1e-12 && std::abs(rp - 1.0) <= 1e-12 && secs < 1.0;
  });

  // 2. beta_max across dimensions
  R.criterion(2, "beta-max", [&](std::ostringstream& d) {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    for (int n = 3; n <= 7; ++n) {
      const BetaMaxResult b = schwarzschild_beta_max(n);
      const double err = std::abs(b.beta_max - b.stationary_value);
      ok = ok && err <= 1e-8;
      d << "n=" << n << " err=" << err;
      if (n > 3) {
        d << " printed-formula-discrepancy=" << std::abs(b.printed_formula - b.beta_max);
      }
      d << "; ";
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return ok && secs < 5.0;
  });

  // 3. Poincare reproduction
  R.criterion(3, "poincare-reproduction", [&](std::ostringstream& d) {
    const auto start = std::chrono::steady_clock::now();
    const BoundaryModel m = BoundaryModel::round_sphere(3, 1.0);
    ExpandOptions eo;
    eo.t_max = 1.0;
    const FGSeries s = expand(metric_of(m), SymTensorField::zero(m), 8, eo);
    const MetricCurve c = evolve(s, 0.01, 1.0, 1e-10);
    const double err = max_rel_err_vs_poincare(c);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    d << "max-rel-err=" << err;
    return err <= 1e-7 && c.status == CurveStatus::Ok && secs < 10.0;
  });

  // 4. FG parity + locality on randomized homogeneous inputs
  R.criterion(4, "fg-parity-locality", [&](std::ostringstream& d) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.7, 1.6);
    double worst_parity = 0.0, worst_local = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const int pick = trial % 5;
      BoundaryModel m = (pick == 0)   ? BoundaryModel::round_sphere(3, unif(rng))
                        : (pick == 1) ? BoundaryModel::round_sphere(5, unif(rng))
                        : (pick == 2) ? BoundaryModel::circle_sphere(3, kPi * unif(rng), unif(rng))
                        : (pick == 3) ? BoundaryModel::circle_sphere(5, kPi * unif(rng), unif(rng))
                                      : BoundaryModel::circle_sphere(7, kPi * unif(rng), unif(rng));
      const SymTensorField gamma = metric_of(m);
      const SymTensorField gA = random_tt_field(m, rng);
      const SymTensorField gB = random_tt_field(m, rng);
      const int K = m.n + 3;
      const FGSeries sA = expand(gamma, gA, K);
      const FGSeries sB = expand(gamma, gB, K);
      for (int k = 1; k < m.n; ++k) {
        if (k % 2 == 1) worst_parity = std::max(worst_parity, sA.coeffs[k].max_abs());
        worst_local = std::max(worst_local, (sA.coeffs[k] - sB.coeffs[k]).max_abs());
      }
    }
    // even n: parity below the resonance order, K < n
    for (int n : {4, 6}) {
      const BoundaryModel m = BoundaryModel::circle_sphere(n, 2.0, 1.1);
      const FGSeries s = expand(metric_of(m), SymTensorField::zero(m), n - 1);
      for (int k = 1; k < n; k += 2) worst_parity = std::max(worst_parity, s.coeffs[k].max_abs());
    }
    d << "max-odd-coeff=" << worst_parity << " max-locality-dev=" << worst_local;
    return worst_parity <= 1e-12 && worst_local <= 1e-12;
  });

  // 5. constraint propagation on the suite's evolved curves
  R.criterion(5, "constraint-propagation", [&](std::ostringstream& d) {
    bool ok = true;
    double worst_ratio = 0.0;
    auto check = [&](const MetricCurve& c, double tol, const char* tag) {
      const ConstraintReport rep = constraint_residuals(c);
      const double worst =
          std::max({rep.max_divergence, rep.max_riccati_trace});
      worst_ratio = std::max(worst_ratio, worst / tol);
      ok = ok && worst <= 1e3 * tol;
      d << tag << "=" << worst << "; ";
    };
    {
      const BoundaryModel m = BoundaryModel::round_sphere(3, 1.0);
      ExpandOptions eo;
      eo.t_max = 1.0;
      const FGSeries s = expand(metric_of(m), SymTensorField::zero(m), 8, eo);
      check(evolve(s, 0.01, 1.0, 1e-10), 1e-10, "poincare");
    }
    {
      const BoundaryModel m = BoundaryModel::flat_torus(3, 0.0, 8);
      const FGSeries s = expand(metric_of(m), SymTensorField::zero(m), 8);
      check(evolve(s, 0.01, 0.5, 1e-10), 1e-10, "cusp");
    }
    {
      const SchwarzschildParams p = make_schwarzschild(3, 1.0);
      const BoundaryModel m = BoundaryModel::circle_sphere(3, p.beta, 1.0);
      const SymTensorField g3 =
          SymTensorField::from_blocks(m, {-4.0 * p.m / 3.0, 2.0 * p.m / 3.0});
      ExpandOptions eo;
      eo.t_max = 1.0;
      const FGSeries s = expand(metric_of(m), g3, 10, eo);
      check(evolve(s, 0.01, 0.9, 1e-10), 1e-10, "schwarzschild");
    }
    {
      const BoundaryModel m = BoundaryModel::circle_sphere(3, kPi, 1.0);
      const SymTensorField g3 = SymTensorField::from_blocks(m, {-2.0, 1.0});
      const FGSeries s = expand(metric_of(m), g3, 10);
      check(evolve(s, 0.01, 0.5, 1e-10), 1e-10, "tt-data");
    }
    d << "worst/tol=" << worst_ratio;
    return ok;
  });

  // 6. identity (5.9) on the 32^3 torus
  R.criterion(6, "identity-5-9", [&](std::ostringstream& d) {
    const auto start = std::chrono::steady_clock::now();
    const BoundaryModel m = BoundaryModel::flat_torus(3, 0.0, 32);
    const SymTensorField gamma = metric_of(m);
    const VectorField X = VectorField::coordinate_axis(m, 0);
    const SymTensorField tau = example53(3, [](double x) { return std::sin(x); }, m);
    const SymTensorField h = example53(3, [](double x) { return std::cos(x); }, m);
    const IdentityReport rep = verify_identity_5_9(gamma, X, tau, h);
    const double vol = std::pow(2.0 * kPi, 3);
    const double lhs_err = std::abs(rep.lhs - vol) / vol;
    bool ok = lhs_err <= 1e-8 && rep.residual <= 1e-6;
    d << "lhs-rel-err=" << lhs_err << " canonical-residual=" << rep.residual;
    std::mt19937_64 rng(seed + 1);
    std::uniform_int_distribution<int> axis(0, 2);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const VectorField Xr = VectorField::coordinate_axis(m, axis(rng));
      const SymTensorField taur = random_tt_field(m, rng);
      const SymTensorField hr = random_sym_field(m, rng, 0.5);
      const IdentityReport r2 = verify_identity_5_9(gamma, Xr, taur, hr);
      worst = std::max(worst, r2.residual);
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    d << " worst-random-residual=" << worst << " time=" << secs;
    return ok && worst <= 1e-5 && secs < 30.0;
  });

  // 7. Example 5.3 obstruction
  R.criterion(7, "example53-obstruction", [&](std::ostringstream& d) {
    const BoundaryModel m = BoundaryModel::flat_torus(3, 0.0, 16);
    const SymTensorField gamma = metric_of(m);
    const SymTensorField tau = example53(3, [](double x) { return std::sin(x); }, m);
    const SymTensorField h = example53(3, [](double x) { return std::cos(x); }, m);
    const std::vector<double> proj = obstruction_projection(gamma, tau, h);
    const double expected = 0.5 * std::pow(2.0 * kPi, 3);
    d << "component=" << proj[0] << " threshold=" << 0.9 * expected;
    return std::abs(proj[0]) >= 0.9 * expected;
  });

  // 8. unique continuation, quantitative face
  R.criterion(8, "unique-continuation", [&](std::ostringstream& d) {
    const BoundaryModel m = BoundaryModel::circle_sphere(3, kPi, 1.0);
    const SymTensorField gamma = metric_of(m);
    const SymTensorField g3 = SymTensorField::from_blocks(m, {-2.0, 1.0});
    ExpandOptions eo;
    eo.t_max = 1.0;
    const FGSeries s = expand(gamma, g3, 10, eo);
    // coarse sampling so the step choice is tolerance-driven, not forced
    EvolveOptions ev;
    ev.samples = 60;
    const MetricCurve cA = evolve(s, 0.01, 0.6, 1e-10, ev);
    const MetricCurve cB = evolve(s, 0.01, 0.6, 1e-12, ev);
    const SplitNorms split = difference(cA, cB);
    double maxdiff = 0.0;
    for (std::size_t i = 0; i < split.t.size(); ++i)
      maxdiff = std::max(maxdiff, std::hypot(split.trace_norm[i], split.trace_free_norm[i]));
    // identical data and tolerance: exact determinism
    const UniqueContinuationResult same =
        unique_continuation_experiment(gamma, g3, g3);
    const UniqueContinuationResult diff = unique_continuation_experiment(
        gamma, SymTensorField::zero(m), g3);
    d << "two-tol-diff=" << maxdiff << " identical-floorhit=" << same.trace_free.floor_hit
      << " tf-exponent=" << diff.trace_free.exponent;
    return maxdiff < 1e-7 && same.trace_free.floor_hit && same.trace.floor_hit &&
           std::abs(diff.trace_free.exponent - 3.0) <= 0.05;
  });

  // 9. isometry extension dichotomy on the Example 5.3 data
  R.criterion(9, "isometry-extension-dichotomy", [&](std::ostringstream& d) {
    const BoundaryModel m = BoundaryModel::flat_torus(3, 0.0, 16);
    const SymTensorField gamma = metric_of(m);
    const SymTensorField g3 = example53(3, [](double x) { return std::sin(x); }, m);
    const VectorField X1 = VectorField::coordinate_axis(m, 0);
    const VectorField X2 = VectorField::coordinate_axis(m, 1);
    const IsometryExtensionResult r1 = isometry_extension_experiment(gamma, X1, g3);
    const IsometryExtensionResult r2 = isometry_extension_experiment(gamma, X2, g3);
    const double expected = std::pow(2.0 * kPi, 1.5);
    const double coeff_err = std::abs(r1.criterion_norm - expected);
    d << "failing-order=" << r1.leading_order << " coeff-err=" << coeff_err
      << " extending-floored=" << r2.floored;
    return r1.leading_order == 3 && coeff_err <= 1e-6 && r2.floored &&
           r2.criterion_norm <= 1e-12;
  });

  // 10. round-trip expand -> evolve -> extract on homogeneous presets
  R.criterion(10, "round-trip", [&](std::ostringstream& d) {
    std::mt19937_64 rng(seed + 2);
    struct Preset {
      BoundaryModel model;
      SymTensorField g_n;
      const char* tag;
    };
    std::vector<Preset> presets;
    {
      const BoundaryModel m = BoundaryModel::round_sphere(3, 1.0);
      presets.push_back({m, SymTensorField::zero(m), "poincare"});
      const BoundaryModel m2 = BoundaryModel::round_sphere(3, 1.3);
      presets.push_back({m2, SymTensorField::zero(m2), "sphere-1.3"});
      const BoundaryModel m3 = BoundaryModel::circle_sphere(3, kPi, 1.0);
      presets.push_back(
          {m3, SymTensorField::from_blocks(m3, {-4.0 / 3.0, 2.0 / 3.0}), "schwarzschild"});
      presets.push_back({m3, random_tt_field(m3, rng), "cs3-random"});
      const BoundaryModel m5 = BoundaryModel::circle_sphere(5, 2.0, 1.0);
      presets.push_back({m5, random_tt_field(m5, rng, 0.5), "cs5-random"});
    }
    bool ok = true;
    for (const auto& ps : presets) {
      const int n = ps.model.n;
      ExpandOptions eo;
      eo.t_max = 1.0;
      const FGSeries s = expand(metric_of(ps.model), ps.g_n, n + 5, eo);
      EvolveOptions ev;
      ev.samples = 1500;
      const MetricCurve c = evolve(s, 0.004, 0.35, 1e-12, ev);
      ExtractOptions xo;
      if (n <= 3) {
        xo.window_low = 0.01;
        xo.window_high = 0.12;
        xo.degree = 6;
      } else {
        // the 1/t^n noise amplification pushes the window up for larger n
        xo.window_low = 0.02;
        xo.window_high = 0.16;
        xo.degree = 8;
      }
      const SymTensorField rec = extract_coefficient(c, s, n, xo);
      const double err = (rec - ps.g_n).max_abs();
      d << ps.tag << "-err=" << err << "; ";
      ok = ok && err <= 1e-6;
    }
    return ok;
  });

  return R.results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace fglab
