#include "fglab/exact.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>

#include "fglab/calculus.hpp"
#include "fglab/errors.hpp"

namespace fglab {

namespace {
constexpr double kPi = std::numbers::pi;

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
}  // namespace

MetricCurve poincare_curve(int n, const std::vector<double>& t_grid, double radius) {
  const BoundaryModel m = BoundaryModel::round_sphere(n, radius);
  MetricCurve c;
  c.model = m;
  const double a2 = radius * radius;
  for (double t : t_grid) {
    if (!(t >= 0.0 && t < 2.0 * radius))
      reject("t-outside-range", "Poincare gauge radius is 2a");
    const double phi = 1.0 - t * t / (4.0 * a2);
    c.t_grid.push_back(t);
    c.values.push_back(SymTensorField::from_blocks(m, {a2 * phi * phi}));
    c.derivs.push_back(SymTensorField::from_blocks(m, {-t * phi}));
  }
  return c;
}

MetricCurve cone_metric_curve(const SymTensorField& gamma, const std::vector<double>& t_grid) {
  MetricCurve c;
  c.model = gamma.model;
  for (double t : t_grid) {
    c.t_grid.push_back(t);
    c.values.push_back(gamma);
    c.derivs.push_back(SymTensorField::zero(gamma.model));
  }
  return c;
}

double schwarzschild_V(int n, double m, double r) {
  return 1.0 + r * r - 2.0 * m / std::pow(r, n - 2);
}

double schwarzschild_rplus(int n, double m) {
  if (!(m > 0.0)) reject("bad-mass", "mass must be positive");
  // V is strictly increasing on r > 0, so the root is unique
  double lo = 1e-12, hi = 1.0;
  while (schwarzschild_V(n, m, hi) < 0.0) hi *= 2.0;
  auto f = [&](double r) { return schwarzschild_V(n, m, r); };
  boost::math::tools::eps_tolerance<double> tol(48);
  std::uintmax_t iters = 200;
  auto br = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
  return 0.5 * (br.first + br.second);
}

double schwarzschild_beta(int n, double r_plus) {
  if (!(r_plus > 0.0)) reject("bad-radius", "r+ must be positive");
  return 4.0 * kPi * r_plus / (n * r_plus * r_plus + (n - 2));
}

SchwarzschildParams make_schwarzschild(int n, double m) {
  SchwarzschildParams p;
  p.n = n;
  p.m = m;
  p.r_plus = schwarzschild_rplus(n, m);
  p.beta = schwarzschild_beta(n, p.r_plus);
  return p;
}

BetaMaxResult schwarzschild_beta_max(int n) {
  if (n < 3) reject("bad-dimension", "need n >= 3");
  BetaMaxResult out;
  out.r_plus_star = std::sqrt((n - 2.0) / n);
  out.stationary_value = 2.0 * kPi / std::sqrt(static_cast<double>(n) * (n - 2));
  out.printed_formula = 2.0 * kPi * std::sqrt((n - 2.0) / n);
  // bracket by grid scan, then golden-section to 1e-10
  auto beta = [&](double r) { return schwarzschild_beta(n, r); };
  double best_r = out.r_plus_star, best = -1.0;
  for (int i = 1; i <= 400; ++i) {
    const double r = 2.5 * i / 400.0;
    if (beta(r) > best) {
      best = beta(r);
      best_r = r;
    }
  }
  double a = best_r * 0.5, b = best_r * 1.5;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  while (b - a > 1e-12) {
    if (beta(c) > beta(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - gr * (b - a);
    d = a + gr * (b - a);
  }
  out.beta_max = beta(0.5 * (a + b));
  return out;
}

namespace {

// G(r) = ∫_r^∞ (1/√V − 1/ρ) dρ. Finite part with ρ = r₊ + w² (regularizes the
// horizon square-root), smooth tail with u = 1/ρ.
double schw_G(const SchwarzschildParams& p, double r) {
  const int n = p.n;
  const double m = p.m, rp = p.r_plus;
  const double R0 = std::max({2.0 * r, rp + 2.0, 4.0});
  auto fin = [&](double w) {
    const double rho = rp + w * w;
    return 2.0 * w * (1.0 / std::sqrt(schwarzschild_V(n, m, rho)) - 1.0 / rho);
  };
  const double w0 = std::sqrt(std::max(0.0, r - rp));
  const double w1 = std::sqrt(R0 - rp);
  const double I1 = GK::integrate(fin, w0, w1, 12, 1e-13);
  auto tail = [&](double u) {
    // (1/√V(1/u) − u)/u², analytic at u = 0
    const double s = std::sqrt(1.0 + u * u - 2.0 * m * std::pow(u, n));
    return (1.0 / s - 1.0) / u;
  };
  const double I2 = GK::integrate(tail, 0.0, 1.0 / R0, 12, 1e-13);
  return I1 + I2;
}

}  // namespace

double schwarzschild_t_of_r(const SchwarzschildParams& p, double r) {
  if (!(r >= p.r_plus)) reject("t-outside-range", "r below the horizon");
  return std::exp(schw_G(p, r)) / r;
}

double schwarzschild_t_plus(const SchwarzschildParams& p) {
  return schwarzschild_t_of_r(p, p.r_plus);
}

double schwarzschild_r_of_t(const SchwarzschildParams& p, double t) {
  const double tp = schwarzschild_t_plus(p);
  if (!(t > 0.0 && t < tp)) reject("t-outside-range", "t outside (0, t+)");
  double lo = p.r_plus, hi = std::max(3.0 / t, p.r_plus + 1.0);
  while (schwarzschild_t_of_r(p, hi) > t) hi *= 2.0;
  auto f = [&](double r) { return schwarzschild_t_of_r(p, r) - t; };
  boost::math::tools::eps_tolerance<double> tol(50);
  std::uintmax_t iters = 200;
  auto br = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
  double r = 0.5 * (br.first + br.second);
  // Newton polish: dt/dr = -t/√V
  for (int it = 0; it < 3 && r > p.r_plus; ++it) {
    const double tv = schwarzschild_t_of_r(p, r);
    const double dtdr = -tv / std::sqrt(schwarzschild_V(p.n, p.m, r));
    const double step = (tv - t) / dtdr;
    if (!std::isfinite(step)) break;
    const double rn = r - step;
    if (rn > p.r_plus && std::isfinite(rn)) r = rn;
  }
  return r;
}

MetricCurve schwarzschild_fg_curve(const SchwarzschildParams& p,
                                   const std::vector<double>& t_grid) {
  const BoundaryModel m = BoundaryModel::circle_sphere(p.n, p.beta, 1.0);
  MetricCurve c;
  c.model = m;
  for (double t : t_grid) {
    const double r = schwarzschild_r_of_t(p, t);
    const double V = schwarzschild_V(p.n, p.m, r);
    const double sV = std::sqrt(V);
    const double Vp = 2.0 * r + 2.0 * (p.n - 2) * p.m / std::pow(r, p.n - 1);
    c.t_grid.push_back(t);
    c.values.push_back(SymTensorField::from_blocks(m, {t * t * V, t * t * r * r}));
    // ẋ via dr/dt = −√V / t
    c.derivs.push_back(
        SymTensorField::from_blocks(m, {2.0 * t * V - t * Vp * sV, 2.0 * t * r * r - 2.0 * t * r * sV}));
  }
  return c;
}

SymTensorField extract_coefficient(const MetricCurve& curve, const FGSeries& series, int k,
                                   const ExtractOptions& opts) {
  require_same_model(curve.model, series.model, "extract_coefficient");
  if (series.K < k - 1) reject("bad-order", "series must hold the coefficients below k");
  const BoundaryModel& m = curve.model;

  // Chebyshev basis on the window, extrapolated to t = 0
  auto cheb_row = [](double u, int deg, Eigen::VectorXd& row) {
    row.resize(deg + 1);
    row(0) = 1.0;
    if (deg >= 1) row(1) = u;
    for (int mdeg = 2; mdeg <= deg; ++mdeg) row(mdeg) = 2.0 * u * row(mdeg - 1) - row(mdeg - 2);
  };

  auto fit_window = [&](double w0, double w1, SymTensorField& out) {
    std::vector<std::size_t> idx;
    for (std::size_t s = 0; s < curve.t_grid.size(); ++s)
      if (curve.t_grid[s] >= w0 && curve.t_grid[s] <= w1) idx.push_back(s);
    const int deg = opts.degree;
    if (static_cast<int>(idx.size()) < 2 * (deg + 1))
      reject("bad-window", "not enough curve samples in the fit window");
    const std::size_t ns = idx.size();
    Eigen::MatrixXd Vand(ns, deg + 1);
    Eigen::VectorXd row;
    for (std::size_t r = 0; r < ns; ++r) {
      const double u = (2.0 * curve.t_grid[idx[r]] - (w1 + w0)) / (w1 - w0);
      cheb_row(u, deg, row);
      Vand.row(r) = row;
    }
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Vand);
    Eigen::VectorXd at_zero;
    cheb_row(-(w1 + w0) / (w1 - w0), deg, at_zero);
    out = SymTensorField::zero(m);
    const std::size_t ncells = out.data.size();
    Eigen::VectorXd rhs(ns);
    for (std::size_t cell = 0; cell < ncells; ++cell) {
      for (std::size_t r = 0; r < ns; ++r) {
        const double t = curve.t_grid[idx[r]];
        double resid = curve.values[idx[r]].data[cell];
        double tj = 1.0;
        for (int j = 0; j < k; ++j) {
          resid -= tj * series.coeffs[j].data[cell];
          tj *= t;
        }
        rhs(r) = resid / std::pow(t, k);
      }
      const Eigen::VectorXd coef = qr.solve(rhs);
      out.data[cell] = at_zero.dot(coef);
    }
  };

  SymTensorField full = SymTensorField::zero(m), half = SymTensorField::zero(m);
  fit_window(opts.window_low, opts.window_high, full);
  fit_window(opts.window_low, opts.window_low + 0.5 * (opts.window_high - opts.window_low),
             half);
  const double dev = (full - half).max_abs();
  if (dev > opts.stability_tol * (1.0 + full.max_abs()))
    numerical_failure("unstable-fit", "coefficient fit is window-sensitive");
  return full;
}

}  // namespace fglab
