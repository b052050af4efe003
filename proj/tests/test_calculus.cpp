#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fglab/calculus.hpp"
#include "fglab/constraint_lab.hpp"
#include "fglab/errors.hpp"
#include "fglab/random.hpp"
#include "oracles.hpp"

using namespace fglab;
namespace {
constexpr double kPi = std::numbers::pi;

BoundaryModel torus16() { return BoundaryModel::flat_torus(3, 0.0, 16); }

SymTensorField wavy_metric(const BoundaryModel& m, double amp) {
  // γ + amp * smooth symmetric perturbation, kept positive definite
  std::mt19937_64 rng(42);
  SymTensorField h = random_sym_field(m, rng, amp);
  return metric_of(m) + h;
}
}  // namespace

TEST_CASE("metric_of per model") {
  const BoundaryModel tor = torus16();
  const SymTensorField gt = metric_of(tor);
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) CHECK(gt.at(7, i, j) == (i == j ? 1.0 : 0.0));

  const SymTensorField gs = metric_of(BoundaryModel::round_sphere(3, 1.0));
  CHECK(gs.data == std::vector<double>{1.0});

  const BoundaryModel cs = BoundaryModel::circle_sphere(3, kPi, 1.0);
  const SymTensorField gc = metric_of(cs);
  CHECK(gc.data == std::vector<double>{1.0, 1.0});
  CHECK(cs.circle_length == kPi);  // period carried by the model
}

TEST_CASE("trace examples") {
  const BoundaryModel tor = torus16();
  const SymTensorField gamma = metric_of(tor);
  CHECK(trace(gamma, gamma).max_abs() == doctest::Approx(3.0));

  const SymTensorField g3 = example53(3, [](double x) { return std::sin(x); }, tor);
  CHECK(trace(gamma, g3).max_abs() <= 1e-15);

  const BoundaryModel sph = BoundaryModel::round_sphere(3, 1.0);
  const SymTensorField tau = SymTensorField::from_blocks(sph, {2.5});
  CHECK(trace(metric_of(sph), tau).data[0] == doctest::Approx(3 * 2.5));

  CHECK_THROWS_AS(trace(gamma, tau), Error);  // model mismatch
}

TEST_CASE("divergence examples and finite-difference cross-check") {
  const BoundaryModel tor = torus16();
  const SymTensorField gamma = metric_of(tor);

  std::mt19937_64 rng(1);
  const SymTensorField const_tau =
      SymTensorField::constant(tor, (Eigen::MatrixXd(3, 3) << 2, 1, 0, 1, 3, 1, 0, 1, 2).finished());
  CHECK(divergence(gamma, const_tau).max_abs() <= 1e-14);

  const SymTensorField g3 = example53(3, [](double x) { return std::sin(x); }, tor);
  CHECK(l2_norm(gamma, divergence(gamma, g3)) <= 1e-12);

  // τ = sin(θ¹)(dθ¹)² → (δτ)_1 = −cos(θ¹)
  SymTensorField tau = SymTensorField::zero(tor);
  for (std::size_t p = 0; p < tor.grid_points(); ++p)
    tau.at(p, 0, 0) = std::sin(tor.coordinate(p, 0));
  const OneFormField d = divergence(gamma, tau);
  for (std::size_t p = 0; p < tor.grid_points(); p += 97) {
    CHECK(d.at(p, 0) == doctest::Approx(-std::cos(tor.coordinate(p, 0))).epsilon(1e-10));
    CHECK(std::abs(d.at(p, 1)) <= 1e-12);
  }

  // curved metric: spectral divergence against the 4th-order FD oracle
  const BoundaryModel fine = BoundaryModel::flat_torus(3, 0.0, 32);
  const SymTensorField gw = wavy_metric(fine, 0.15);
  const SymTensorField sigma = random_sym_field(fine, rng, 0.7);
  const OneFormField spec = divergence(gw, sigma);
  const OneFormField fd = test::fd_divergence(gw, sigma);
  double worst = 0.0;
  for (std::size_t i = 0; i < spec.data.size(); ++i)
    worst = std::max(worst, std::abs(spec.data[i] - fd.data[i]));
  CHECK(worst <= 5e-5);  // FD oracle truncation, h^4 at 32 points per axis

  // homogeneous: invariant tensors are parallel
  const BoundaryModel cs = BoundaryModel::circle_sphere(3, kPi, 1.0);
  CHECK(divergence(metric_of(cs), SymTensorField::from_blocks(cs, {-2.0, 1.0})).max_abs() == 0.0);
}

TEST_CASE("killing operator examples") {
  const BoundaryModel tor = torus16();
  const SymTensorField gamma = metric_of(tor);
  CHECK(killing_operator(gamma, VectorField::coordinate_axis(tor, 1)).max_abs() == 0.0);

  // X = sin(θ¹) ∂_2 → (δ*X)_{12} = ½ cos(θ¹)
  VectorField X = VectorField::zero(tor);
  for (std::size_t p = 0; p < tor.grid_points(); ++p)
    X.at(p, 1) = std::sin(tor.coordinate(p, 0));
  const SymTensorField k = killing_operator(gamma, X);
  for (std::size_t p = 0; p < tor.grid_points(); p += 89) {
    CHECK(k.at(p, 0, 1) == doctest::Approx(0.5 * std::cos(tor.coordinate(p, 0))).epsilon(1e-10));
    CHECK(std::abs(k.at(p, 1, 1)) <= 1e-12);
  }

  const BoundaryModel cs = BoundaryModel::circle_sphere(3, kPi, 1.0);
  CHECK(killing_operator(metric_of(cs), VectorField::circle_rotation(cs)).max_abs() == 0.0);
}

TEST_CASE("lie derivative examples and the definitional identity") {
  const BoundaryModel tor = torus16();
  const SymTensorField gamma = metric_of(tor);
  const SymTensorField g3 = example53(3, [](double x) { return std::sin(x); }, tor);

  // X = ∂_1, τ = sin(θ¹) g3-block → cos(θ¹) g3-block
  const SymTensorField lie = lie_derivative(VectorField::coordinate_axis(tor, 0), g3);
  const SymTensorField expect = example53(3, [](double x) { return std::cos(x); }, tor);
  CHECK((lie - expect).max_abs() <= 1e-12);

  // L_X γ = 2 δ*X for random X
  std::mt19937_64 rng(3);
  VectorField X = VectorField::zero(tor);
  for (int a = 0; a < 3; ++a) {
    SymTensorField r = random_sym_field(tor, rng, 0.5);
    for (std::size_t p = 0; p < tor.grid_points(); ++p) X.at(p, a) = r.at(p, 0, 0);
  }
  const SymTensorField lhs = lie_derivative(X, gamma);
  SymTensorField rhs = killing_operator(gamma, X);
  rhs *= 2.0;
  CHECK((lhs - rhs).max_abs() <= 1e-10);
}

TEST_CASE("l2 pairing") {
  const BoundaryModel tor = torus16();
  const SymTensorField gamma = metric_of(tor);
  CHECK(l2_pair(gamma, gamma, gamma) == doctest::Approx(3 * std::pow(2 * kPi, 3)));

  const SymTensorField g3 = example53(3, [](double x) { return std::sin(x); }, tor);
  const SymTensorField lie = lie_derivative(VectorField::coordinate_axis(tor, 0), g3);
  // ∫ cos² |g3|² = ½ (2π)³ · 2
  CHECK(l2_pair(gamma, lie, lie) == doctest::Approx(std::pow(2 * kPi, 3)));

  std::mt19937_64 rng(5);
  const SymTensorField a = random_sym_field(tor, rng), b = random_sym_field(tor, rng);
  CHECK(l2_pair(gamma, a, b) == doctest::Approx(l2_pair(gamma, b, a)));

  // homogeneous closed form: ⟨γ, γ⟩ = n, times the volume
  const BoundaryModel cs = BoundaryModel::circle_sphere(3, 2.0, 1.3);
  const SymTensorField gc = metric_of(cs);
  CHECK(l2_pair(gc, gc, gc) == doctest::Approx(3.0 * cs.volume()));
}

TEST_CASE("adjointness fixes the sign convention") {
  // |⟨δ*X, τ⟩_{L²} − ∫⟨X, δτ⟩| small for random fields, flat and curved γ
  std::mt19937_64 rng(7);
  for (double amp : {0.0, 0.2}) {
    const BoundaryModel m = torus16();
    const SymTensorField gamma = amp == 0.0 ? metric_of(m) : wavy_metric(m, amp);
    const SymTensorField tau = random_sym_field(m, rng, 0.8);
    VectorField X = VectorField::zero(m);
    for (int a = 0; a < 3; ++a) {
      SymTensorField r = random_sym_field(m, rng, 0.5);
      for (std::size_t p = 0; p < m.grid_points(); ++p) X.at(p, a) = r.at(p, 0, 0);
    }
    const double lhs = l2_pair(gamma, killing_operator(gamma, X), tau);
    const double rhs = pair_form_vector(gamma, divergence(gamma, tau), X);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(lhs)));
  }
}

TEST_CASE("linearized divergence") {
  const BoundaryModel m = torus16();
  const SymTensorField gamma = metric_of(m);
  std::mt19937_64 rng(11);

  SUBCASE("h = 0 gives 0") {
    const SymTensorField tau = random_sym_field(m, rng);
    CHECK(divergence_linearized(gamma, SymTensorField::zero(m), tau).max_abs() == 0.0);
  }

  SUBCASE("constant conformal h with constant tau gives 0") {
    SymTensorField h = gamma;
    h *= 0.3;
    const SymTensorField tau =
        SymTensorField::constant(m, (Eigen::MatrixXd(3, 3) << 1, 0, 1, 0, -2, 0, 1, 0, 1).finished());
    CHECK(divergence_linearized(gamma, h, tau).max_abs() <= 1e-10);
  }

  SUBCASE("matches the brute-force oracle") {
    const SymTensorField tau = example53(3, [](double x) { return std::sin(x); }, m);
    const SymTensorField h = example53(3, [](double x) { return std::cos(x); }, m);
    const OneFormField dp = divergence_linearized(gamma, h, tau);
    // oracle: centered differences of the independent FD divergence
    const double eps = 1e-5;
    auto at = [&](double s) {
      SymTensorField gs = gamma;
      for (std::size_t i = 0; i < gs.data.size(); ++i) gs.data[i] += s * h.data[i];
      return test::fd_divergence(gs, tau);
    };
    OneFormField coarse = at(eps) - at(-eps);
    coarse *= 1.0 / (2 * eps);
    OneFormField fine = at(0.5 * eps) - at(-0.5 * eps);
    fine *= 1.0 / eps;
    OneFormField rich = OneFormField::zero(m);
    for (std::size_t i = 0; i < rich.data.size(); ++i)
      rich.data[i] = (4 * fine.data[i] - coarse.data[i]) / 3.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < rich.data.size(); ++i)
      worst = std::max(worst, std::abs(rich.data[i] - dp.data[i]));
    CHECK(worst <= 5e-5);  // dominated by the oracle's spatial FD truncation
    CHECK(dp.max_abs() > 0.1);
  }

  SUBCASE("halving eps reduces the Richardson discrepancy by about 4") {
    const SymTensorField tau = random_tt_field(m, rng);
    const SymTensorField h = random_sym_field(m, rng, 0.6);
    const auto d1 = divergence_linearized_checked(gamma, h, tau, 2e-3);
    const auto d2 = divergence_linearized_checked(gamma, h, tau, 1e-3);
    CHECK(d1.richardson_discrepancy / d2.richardson_discrepancy ==
          doctest::Approx(4.0).epsilon(0.25));
  }

  SUBCASE("homogeneous models: invariant path keeps delta at zero") {
    const BoundaryModel cs = BoundaryModel::circle_sphere(3, kPi, 1.0);
    const auto r = divergence_linearized_checked(metric_of(cs),
                                                 SymTensorField::from_blocks(cs, {0.2, -0.1}),
                                                 SymTensorField::from_blocks(cs, {-2.0, 1.0}));
    CHECK(r.value.max_abs() == 0.0);
  }
}

TEST_CASE("ricci tensor of a conformally flat grid metric") {
  // g = e^{2φ} δ with φ = a cos(θ¹ + θ²):
  // Ric = −(n−2)(D²φ − dφ⊗dφ) − (Δφ + (n−2)|∇φ|²) e^{2φ}·e^{-2φ}δ ... all
  // computed against the closed conformal-change formula below.
  const BoundaryModel m = BoundaryModel::flat_torus(3, 0.0, 32);
  const double a = 0.08;
  SymTensorField g = SymTensorField::zero(m);
  for (std::size_t p = 0; p < m.grid_points(); ++p) {
    const double phi = a * std::cos(m.coordinate(p, 0) + m.coordinate(p, 1));
    for (int i = 0; i < 3; ++i) g.at(p, i, i) = std::exp(2 * phi);
  }
  const SymTensorField ric = ricci_tensor(g);
  const int n = 3;
  double worst = 0.0;
  for (std::size_t p = 0; p < m.grid_points(); p += 13) {
    const double th = m.coordinate(p, 0) + m.coordinate(p, 1);
    const double phi = a * std::cos(th);
    // ∂φ = (−a sin, −a sin, 0); D²φ_{ij} = −a cos in the (1,1),(1,2),(2,2) slots
    Eigen::Vector3d dphi(-a * std::sin(th), -a * std::sin(th), 0.0);
    Eigen::Matrix3d d2phi = Eigen::Matrix3d::Zero();
    d2phi(0, 0) = d2phi(1, 1) = d2phi(0, 1) = d2phi(1, 0) = -a * std::cos(th);
    const double lap = d2phi.trace();
    const double grad2 = dphi.squaredNorm();
    Eigen::Matrix3d expect = -(n - 2) * (d2phi - dphi * dphi.transpose()) -
                             (lap + (n - 2) * grad2) * Eigen::Matrix3d::Identity();
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j)
        worst = std::max(worst, std::abs(ric.at(p, i, j) - expect(i, j)));
  }
  CHECK(worst <= 1e-10);
  CHECK(ricci_tensor(metric_of(m)).max_abs() == 0.0);
}

TEST_CASE("tt projection produces transverse-traceless fields") {
  const BoundaryModel m = torus16();
  const SymTensorField gamma = metric_of(m);
  std::mt19937_64 rng(13);
  const SymTensorField tau = random_tt_field(m, rng);
  CHECK(l2_norm(gamma, trace(gamma, tau)) <= 1e-12);
  CHECK(l2_norm(gamma, divergence(gamma, tau)) <= 1e-12);
  // idempotent
  CHECK((tt_project(tau) - tau).max_abs() <= 1e-12);
  CHECK(tau.max_abs() > 1e-3);
}
