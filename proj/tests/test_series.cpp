#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fglab/calculus.hpp"
#include "fglab/constraint_lab.hpp"
#include "fglab/errors.hpp"
#include "fglab/random.hpp"
#include "fglab/series.hpp"
#include "oracles.hpp"

using namespace fglab;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("indicial roots of the model operator") {
  CHECK(indicial_roots({1.0}) == std::pair{0.0, 2.0});   // trace operator
  CHECK(indicial_roots({2.0}) == std::pair{0.0, 3.0});   // trace-free, n = 3
  CHECK(indicial_roots({0.0}) == std::pair{0.0, 1.0});
  CHECK_THROWS_AS(indicial_roots({-1.0}), Error);
}

TEST_CASE("cusp series: flat torus with vanishing datum stays flat") {
  const BoundaryModel m = BoundaryModel::flat_torus(3, 0.0, 8);
  const FGSeries s = expand(metric_of(m), SymTensorField::zero(m), 8);
  for (int k = 1; k <= 8; ++k) CHECK(s.coeffs[k].max_abs() == 0.0);
  auto [g, gd] = eval(s, 0.37);
  CHECK((g - metric_of(m)).max_abs() == 0.0);
}

TEST_CASE("round sphere reproduces the closed-form ball expansion") {
  for (double a : {1.0, 1.3}) {
    const BoundaryModel m = BoundaryModel::round_sphere(3, a);
    const FGSeries s = expand(metric_of(m), SymTensorField::zero(m), 10);
    // (1 − t²/(4a²))² a² = a² − t²/2 + t⁴/(16 a²)
    CHECK(s.coeffs[2].data[0] == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(s.coeffs[4].data[0] == doctest::Approx(1.0 / (16 * a * a)).epsilon(1e-13));
    for (int k : {1, 3, 5, 6, 7, 8, 9, 10})
      CHECK(std::abs(s.coeffs[k].data[0]) <= 1e-14);
  }
}

TEST_CASE("eval returns the curve and its derivative") {
  const BoundaryModel m = BoundaryModel::round_sphere(3, 1.0);
  ExpandOptions eo;
  eo.t_max = 1.0;
  const FGSeries s = expand(metric_of(m), SymTensorField::zero(m), 8, eo);
  auto [g0, gd0] = eval(s, 0.0);
  CHECK(g0.data[0] == 1.0);
  CHECK(gd0.data[0] == 0.0);
  auto [g1, gd1] = eval(s, 1.0);
  CHECK(g1.data[0] == doctest::Approx(0.5625).epsilon(1e-14));
  CHECK(gd1.data[0] == doctest::Approx(-0.75).epsilon(1e-13));  // −t(1−t²/4)
}

TEST_CASE("AdS-Schwarzschild data on the product model") {
  const BoundaryModel m = BoundaryModel::circle_sphere(3, kPi, 1.0);
  const double mass = 1.0;
  const SymTensorField g3 =
      SymTensorField::from_blocks(m, {-4.0 * mass / 3.0, 2.0 * mass / 3.0});
  const FGSeries s = expand(metric_of(m), g3, 8);
  // γ-determined orders (hand-derived from the large-r expansion)
  CHECK(s.coeffs[2].data[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(s.coeffs[2].data[1] == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(s.coeffs[4].data[0] == doctest::Approx(1.0 / 16).epsilon(1e-13));
  CHECK(s.coeffs[4].data[1] == doctest::Approx(1.0 / 16).epsilon(1e-13));
  CHECK(s.coeffs[5].data[0] == doctest::Approx(-0.6).epsilon(1e-12));
  CHECK(s.coeffs[5].data[1] == doctest::Approx(-0.1).epsilon(1e-12));
  CHECK(s.coeffs[1].max_abs() == 0.0);
  CHECK(s.coeffs[3].data[0] == doctest::Approx(-4.0 / 3));
}

TEST_CASE("torus recursion with the Example 5.3 datum") {
  const BoundaryModel m = BoundaryModel::flat_torus(3, 0.0, 16);
  const SymTensorField gamma = metric_of(m);
  const SymTensorField g3 = example53(3, [](double x) { return std::sin(x); }, m);
  const FGSeries s = expand(gamma, g3, 6);

  CHECK(s.coeffs[1].max_abs() <= 1e-15);
  CHECK(s.coeffs[2].max_abs() <= 1e-15);
  CHECK(s.coeffs[4].max_abs() <= 1e-13);

  // order 5: the linearized slice curvature feeds back sin(θ¹)/10 times the block
  const SymTensorField a5_expect = 0.1 * g3;
  CHECK((s.coeffs[5] - a5_expect).max_abs() <= 1e-12);

  // order 6 (the 2n trace resonance): f²(G²/2 − γ/8) with G² = diag(0,1,1)
  double worst = 0.0;
  for (std::size_t p = 0; p < m.grid_points(); ++p) {
    const double f2 = std::pow(std::sin(m.coordinate(p, 0)), 2);
    Eigen::Matrix3d expect = Eigen::Matrix3d::Zero();
    expect(1, 1) = expect(2, 2) = f2 / 2.0;
    expect -= (f2 / 8.0) * Eigen::Matrix3d::Identity();
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j)
        worst = std::max(worst, std::abs(s.coeffs[6].at(p, i, j) - expect(i, j)));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("radial residual of the truncated series decays at order K-1") {
  const BoundaryModel m = BoundaryModel::circle_sphere(3, kPi, 1.0);
  const SymTensorField g3 = SymTensorField::from_blocks(m, {-4.0 / 3.0, 2.0 / 3.0});
  const int K = 8;
  const FGSeries s = expand(metric_of(m), g3, K);
  double prev_r = 0.0, prev_t = 0.0;
  for (double t : {0.02, 0.04, 0.08, 0.16}) {
    const double r = radial_residual_norm(s, t);
    if (prev_t > 0.0) {
      const double slope = std::log(r / prev_r) / std::log(t / prev_t);
      CHECK(slope >= K - 1.2);
    }
    prev_r = r;
    prev_t = t;
  }
  // torus variant with spatially varying datum
  const BoundaryModel tor = BoundaryModel::flat_torus(3, 0.0, 16);
  const FGSeries st =
      expand(metric_of(tor), example53(3, [](double x) { return std::sin(x); }, tor), 6);
  const double r1 = radial_residual_norm(st, 0.05);
  const double r2 = radial_residual_norm(st, 0.1);
  CHECK(std::log(r2 / r1) / std::log(2.0) >= 5 - 1.2);
}

TEST_CASE("parity and locality invariants") {
  std::mt19937_64 rng(17);
  const BoundaryModel m = BoundaryModel::circle_sphere(5, 2.2, 0.9);
  const SymTensorField gamma = metric_of(m);
  const SymTensorField gA = random_tt_field(m, rng);
  const SymTensorField gB = random_tt_field(m, rng);
  const FGSeries sA = expand(gamma, gA, 8);
  const FGSeries sB = expand(gamma, gB, 8);
  for (int k = 1; k < 5; ++k) {
    if (k % 2 == 1) CHECK(sA.coeffs[k].max_abs() <= 1e-13);
    CHECK((sA.coeffs[k] - sB.coeffs[k]).max_abs() <= 1e-13);
  }
  // order-n trace determined to vanish for TT data
  CHECK(std::abs(trace(gamma, sA.coeffs[5]).data[0]) <= 1e-12);
}

TEST_CASE("non-TT data is rejected for odd n") {
  const BoundaryModel m = BoundaryModel::circle_sphere(3, kPi, 1.0);
  const SymTensorField bad = SymTensorField::from_blocks(m, {1.0, 1.0});  // trace 3
  CHECK_THROWS_WITH_AS(expand(metric_of(m), bad, 5), doctest::Contains("transverse"), Error);

  const BoundaryModel tor = BoundaryModel::flat_torus(3, 0.0, 8);
  SymTensorField tau = SymTensorField::zero(tor);
  for (std::size_t p = 0; p < tor.grid_points(); ++p)
    tau.at(p, 0, 0) = std::sin(tor.coordinate(p, 0));  // not divergence-free
  CHECK_THROWS_AS(expand(metric_of(tor), tau, 5), Error);
}

TEST_CASE("even-n gate and log detection") {
  const BoundaryModel m = BoundaryModel::circle_sphere(4, kPi, 1.0);
  const SymTensorField gamma = metric_of(m);
  const SymTensorField zero = SymTensorField::zero(m);

  // K >= n without opting in: the defined rejection path
  try {
    expand(gamma, zero, 4);
    FAIL("expected log-resonance rejection");
  } catch (const Error& e) {
    CHECK(e.code() == "log-resonance");
    CHECK(e.kind() == ErrorKind::RejectedInput);
  }
  CHECK_NOTHROW(expand(gamma, zero, 3));  // K < n is fine

  // with detection: S¹×S³ is conformally flat, so the obstruction vanishes
  // (order-4 matching source is pure trace; hand-derived value g_(4) = γ/16)
  ExpandOptions eo;
  eo.allow_log_detection = true;
  const FGSeries s = expand(gamma, zero, 4, eo);
  REQUIRE(s.log_obstruction.has_value());
  CHECK(s.log_obstruction->second <= 1e-13);
  CHECK(s.coeffs[2].data[0] == doctest::Approx(0.5));
  CHECK(s.coeffs[2].data[1] == doctest::Approx(-0.5));
  CHECK(s.coeffs[4].data[0] == doctest::Approx(1.0 / 16));
  CHECK(s.coeffs[4].data[1] == doctest::Approx(1.0 / 16));
}

TEST_CASE("resonance check values") {
  // flat torus: all lower sources vanish
  const BoundaryModel tor = BoundaryModel::flat_torus(4, 0.0, 8);
  CHECK(resonance_check(metric_of(tor), 4) == 0.0);

  // round S⁴: the ball closed form (1 − t²/4)² γ has no log term
  const BoundaryModel s4 = BoundaryModel::round_sphere(4, 1.0);
  CHECK(resonance_check(metric_of(s4), 4) <= 1e-14);
  ExpandOptions eo;
  eo.allow_log_detection = true;
  const FGSeries s = expand(metric_of(s4), SymTensorField::zero(s4), 4, eo);
  CHECK(s.coeffs[2].data[0] == doctest::Approx(-0.5));
  CHECK(s.coeffs[4].data[0] == doctest::Approx(1.0 / 16));

  // S¹(β)×S³(r) is conformally flat for every β, r: obstruction 0
  for (double r : {1.0, 1.4}) {
    const BoundaryModel cs = BoundaryModel::circle_sphere(4, 2.0, r);
    CHECK(resonance_check(metric_of(cs), 4) <= 1e-12);
  }

  CHECK_THROWS_AS(resonance_check(metric_of(BoundaryModel::round_sphere(3)), 3), Error);
}

TEST_CASE("torus expansion requires the flat model metric") {
  const BoundaryModel tor = BoundaryModel::flat_torus(3, 0.0, 8);
  std::mt19937_64 rng(23);
  const SymTensorField curved = metric_of(tor) + random_sym_field(tor, rng, 0.1);
  CHECK_THROWS_AS(expand(curved, SymTensorField::zero(tor), 5), Error);
}
