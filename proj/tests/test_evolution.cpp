#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fglab/calculus.hpp"
#include "fglab/errors.hpp"
#include "fglab/evolution.hpp"
#include "fglab/exact.hpp"
#include "fglab/series.hpp"
#include "oracles.hpp"

using namespace fglab;
namespace {
constexpr double kPi = std::numbers::pi;

FGSeries poincare_series(double radius = 1.0, int K = 8) {
  const BoundaryModel m = BoundaryModel::round_sphere(3, radius);
  ExpandOptions eo;
  eo.t_max = 2.0 * radius;
  return expand(metric_of(m), SymTensorField::zero(m), K, eo);
}
}  // namespace

TEST_CASE("cusp evolution stays on the flat curve") {
  const BoundaryModel m = BoundaryModel::flat_torus(3, 0.0, 8);
  const FGSeries s = expand(metric_of(m), SymTensorField::zero(m), 8);
  const MetricCurve c = evolve(s, 0.01, 0.5, 1e-10);
  CHECK(c.status == CurveStatus::Ok);
  double worst = 0.0;
  for (const auto& v : c.values) worst = std::max(worst, (v - metric_of(m)).max_abs());
  CHECK(worst <= 1e-10);
}

TEST_CASE("Poincare evolution matches the closed form within 10x tol") {
  const double tol = 1e-10;
  const MetricCurve c = evolve(poincare_series(), 0.01, 1.0, tol);
  double worst = 0.0;
  for (std::size_t i = 0; i < c.t_grid.size(); ++i)
    worst = std::max(worst, std::abs(c.values[i].data[0] - test::poincare_block(c.t_grid[i])));
  CHECK(worst <= 10 * tol);
}

TEST_CASE("Schwarzschild seed matches the quadrature curve on the overlap") {
  const SchwarzschildParams p = make_schwarzschild(3, 1.0);
  const BoundaryModel m = BoundaryModel::circle_sphere(3, p.beta, 1.0);
  const SymTensorField g3 = SymTensorField::from_blocks(m, {-4.0 / 3.0, 2.0 / 3.0});
  ExpandOptions eo;
  eo.t_max = 1.0;
  const FGSeries s = expand(metric_of(m), g3, 10, eo);
  const MetricCurve c = evolve(s, 0.01, 0.8, 1e-11);
  const MetricCurve q = schwarzschild_fg_curve(p, c.t_grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < c.t_grid.size(); ++i)
    worst = std::max(worst, (c.values[i] - q.values[i]).max_abs());
  CHECK(worst <= 1e-7);
}

TEST_CASE("constraint residuals") {
  SUBCASE("cusp curve: all zero within floating error") {
    const BoundaryModel m = BoundaryModel::flat_torus(3, 0.0, 8);
    std::vector<double> ts;
    for (int i = 0; i < 200; ++i) ts.push_back(0.01 + i * 0.002);
    const ConstraintReport r = constraint_residuals(cone_metric_curve(metric_of(m), ts));
    CHECK(r.max_divergence == 0.0);
    CHECK(r.max_hamiltonian == 0.0);
    CHECK(r.max_riccati_trace == 0.0);
  }
  SUBCASE("analytic Poincare curve: residuals at the FD floor") {
    std::vector<double> ts;
    for (int i = 0; i < 2000; ++i) ts.push_back(0.01 + i * (0.99 / 1999));
    const ConstraintReport r = constraint_residuals(poincare_curve(3, ts));
    CHECK(r.max_riccati_trace <= 1e-10);
    CHECK(r.max_hamiltonian <= 1e-12);
    CHECK(r.max_divergence == 0.0);
  }
  SUBCASE("evolved curve: propagation within 1000x tol") {
    const MetricCurve c = evolve(poincare_series(), 0.01, 1.0, 1e-10);
    const ConstraintReport r = constraint_residuals(c);
    CHECK(r.max_riccati_trace <= 1e-7);
    CHECK(r.max_hamiltonian <= 1e-7);
  }
  SUBCASE("needs at least 3 samples") {
    const BoundaryModel m = BoundaryModel::round_sphere(3, 1.0);
    CHECK_THROWS_AS(constraint_residuals(poincare_curve(3, {0.1, 0.2})), Error);
    (void)m;
  }
}

TEST_CASE("difference splits against the boundary metric") {
  std::vector<double> ts;
  for (int i = 0; i < 50; ++i) ts.push_back(0.01 + i * 0.002);

  SUBCASE("identical curves give zeros") {
    const MetricCurve a = poincare_curve(3, ts);
    const SplitNorms d = difference(a, a);
    for (double v : d.trace_norm) CHECK(v == 0.0);
    for (double v : d.trace_free_norm) CHECK(v == 0.0);
  }
  SUBCASE("model mismatch is rejected") {
    const MetricCurve a = poincare_curve(3, ts);
    const BoundaryModel tor = BoundaryModel::flat_torus(3, 0.0, 8);
    const MetricCurve b = cone_metric_curve(metric_of(tor), ts);
    CHECK_THROWS_AS(difference(a, b), Error);
  }
  SUBCASE("grid mismatch is rejected") {
    const MetricCurve a = poincare_curve(3, ts);
    auto ts2 = ts;
    ts2[3] += 1e-3;
    const MetricCurve b = poincare_curve(3, ts2);
    CHECK_THROWS_AS(difference(a, b), Error);
  }
  SUBCASE("TT datum produces a t^n trace-free difference") {
    const BoundaryModel m = BoundaryModel::circle_sphere(3, kPi, 1.0);
    const double eps = 1e-2;
    const FGSeries sA = expand(metric_of(m), SymTensorField::zero(m), 8);
    const FGSeries sB =
        expand(metric_of(m), SymTensorField::from_blocks(m, {-2.0 * eps, eps}), 8);
    EvolveOptions ev;
    ev.sample_ts = {0.02, 0.04};
    const MetricCurve cA = evolve(sA, 0.01, 0.05, 1e-11, ev);
    const MetricCurve cB = evolve(sB, 0.01, 0.05, 1e-11, ev);
    const SplitNorms d = difference(cA, cB);
    // leading order ε t³: doubling t scales the trace-free part by ~8
    CHECK(d.trace_free_norm[1] / d.trace_free_norm[0] == doctest::Approx(8.0).epsilon(0.02));
    CHECK(d.trace_norm[0] <= 0.01 * d.trace_free_norm[0]);
  }
}

TEST_CASE("re-seeding reproduces the curve") {
  const double tol = 1e-10;
  const MetricCurve c = evolve(poincare_series(), 0.01, 1.0, tol);
  const std::size_t mid = c.t_grid.size() / 2;
  EvolveOptions ev;
  ev.sample_ts = {c.t_grid[mid], c.t_grid.back()};
  const MetricCurve c2 = evolve_from_state(c.values[mid], c.derivs[mid], c.t_grid[mid],
                                           c.t_grid.back(), tol, ev);
  CHECK((c2.values.back() - c.values.back()).max_abs() <= 10 * tol);
}

TEST_CASE("positive definiteness is monitored, not fatal") {
  // the Schwarzschild circle block reaches 0 at t+ — a reported outcome
  const SchwarzschildParams p = make_schwarzschild(3, 1.0);
  const double tp = schwarzschild_t_plus(p);
  const BoundaryModel m = BoundaryModel::circle_sphere(3, p.beta, 1.0);
  const SymTensorField g3 = SymTensorField::from_blocks(m, {-4.0 / 3.0, 2.0 / 3.0});
  ExpandOptions eo;
  eo.t_max = 2.0;
  const FGSeries s = expand(metric_of(m), g3, 10, eo);
  const MetricCurve c = evolve(s, 0.01, 1.2 * tp, 1e-10);
  CHECK(c.status == CurveStatus::LostPositivity);
  CHECK(c.failure_t == doctest::Approx(tp).epsilon(5e-3));
  CHECK(c.t_grid.back() < 1.2 * tp);
}

TEST_CASE("evolve rejects bad seeds") {
  const FGSeries s = poincare_series();
  CHECK_THROWS_AS(evolve(s, 1e-8, 0.5, 1e-10), Error);       // singular point
  CHECK_THROWS_AS(evolve(s, 0.2, 0.1, 1e-10), Error);        // bad window
  CHECK_THROWS_AS(evolve(s, 0.01, 5.0, 1e-10), Error);       // beyond t_max
  CHECK_THROWS_AS(evolve(s, 0.01, 0.5, -1.0), Error);        // bad tolerance
  const BoundaryModel m = BoundaryModel::round_sphere(3, 1.0);
  const FGSeries low = expand(metric_of(m), SymTensorField::zero(m), 4);
  CHECK_THROWS_AS(evolve(low, 0.01, 0.5, 1e-10), Error);     // K < n + 2

  // spatially varying torus data is out of the supported reduction
  const BoundaryModel tor = BoundaryModel::flat_torus(3, 0.0, 8);
  const FGSeries st = expand(
      metric_of(tor), example53(3, [](double x) { return std::sin(x); }, tor), 6);
  try {
    evolve(st, 0.01, 0.4, 1e-8);
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.code() == "unsupported-torus-evolution");
  }

  // a seed residual above tol is flagged
  const FGSeries coarse = expand(metric_of(m), SymTensorField::zero(m), 5);
  CHECK_THROWS_AS(evolve(coarse, 0.3, 0.9, 1e-14), Error);
}

TEST_CASE("radial equation residual along curves") {
  // flat cusp: exact solution of the radial equation
  const BoundaryModel tor = BoundaryModel::flat_torus(3, 0.0, 8);
  std::vector<double> ts;
  for (int i = 0; i < 100; ++i) ts.push_back(0.1 + i * 0.005);
  const MetricCurve cusp = cone_metric_curve(metric_of(tor), ts);
  CHECK(radial_equation_residual(cusp, 50) <= 1e-13);

  // cone over the round sphere: the curvature term survives, O(1) at t ~ 0.5
  const BoundaryModel sph = BoundaryModel::round_sphere(3, 1.0);
  const MetricCurve cone = cone_metric_curve(metric_of(sph), ts);
  const double r = radial_equation_residual(cone, 80);
  CHECK(r > 0.5);

  // evolved Poincare curve: residual at the integrator/FD floor
  const MetricCurve c = evolve(poincare_series(), 0.01, 1.0, 1e-10);
  CHECK(radial_equation_residual(c, c.t_grid.size() / 2) <= 1e-6);
}
