#include "fglab/evolution.hpp"

#include <boost/numeric/odeint.hpp>
#include <cmath>

#include "fglab/calculus.hpp"
#include "fglab/errors.hpp"

namespace fglab {

namespace {

// The IVP seeded near the regular singular point carries a growing t^{2n}
// mode, so tolerance-level local errors amplify downstream. Integrating in
// extended precision with a tightened internal tolerance keeps the
// constraint drift well below the user tolerance.
using Scalar = long double;
using State = std::vector<Scalar>;
using MatX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

struct PositivityLost {
  double t;
};

// cohomogeneity-one right-hand side:
//   g̈ = [ (n−1) ġ + 2 H g + 2 t Ric_{S(t)} − t H ġ + t ġ (g^{-1} ġ) ] / t
struct BlockRhs {
  std::vector<double> dims, ric;
  int n;
  void operator()(const State& y, State& dydt, Scalar t) const {
    const std::size_t nb = dims.size();
    Scalar H = 0.0;
    for (std::size_t b = 0; b < nb; ++b) H += Scalar(0.5) * Scalar(dims[b]) * y[nb + b] / y[b];
    dydt.resize(2 * nb);
    for (std::size_t b = 0; b < nb; ++b) {
      const Scalar x = y[b], xd = y[nb + b];
      const Scalar M = xd / x;
      dydt[b] = xd;
      dydt[nb + b] =
          ((n - 1) * xd + 2 * H * x + 2 * t * Scalar(ric[b]) - t * H * xd + t * xd * M) / t;
    }
  }
};

struct ConstantTorusRhs {
  int n;
  void operator()(const State& y, State& dydt, Scalar t) const {
    const int nc = n * (n + 1) / 2;
    MatX g(n, n), gd(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        g(i, j) = g(j, i) = y[sym_index(i, j, n)];
        gd(i, j) = gd(j, i) = y[nc + sym_index(i, j, n)];
      }
    const MatX M = g.inverse() * gd;
    const Scalar H = Scalar(0.5) * M.trace();
    // constant coefficients keep the slices flat: Ric_{S(t)} = 0
    MatX gdd = (Scalar(n - 1) * gd + 2 * H * g - t * H * gd + t * gd * M) / t;
    gdd = Scalar(0.5) * (gdd + gdd.transpose()).eval();
    dydt.resize(2 * nc);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        dydt[sym_index(i, j, n)] = gd(i, j);
        dydt[nc + sym_index(i, j, n)] = gdd(i, j);
      }
  }
};

bool state_positive(const BoundaryModel& m, const State& y) {
  if (!m.is_grid()) {
    for (int b = 0; b < m.block_count(); ++b)
      if (!(y[b] > 0.0)) return false;
    return true;
  }
  const int n = m.n;
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      g(i, j) = g(j, i) = static_cast<double>(y[sym_index(i, j, n)]);
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  return llt.info() == Eigen::Success;
}

State pack_state(const BoundaryModel& m, const SymTensorField& g, const SymTensorField& gd) {
  if (!m.is_grid()) {
    State y(2 * m.block_count());
    for (int b = 0; b < m.block_count(); ++b) {
      y[b] = g.data[b];
      y[m.block_count() + b] = gd.data[b];
    }
    return y;
  }
  const std::size_t nc = m.sym_components();
  State y(2 * nc);
  for (std::size_t c = 0; c < nc; ++c) {
    y[c] = g.data[c];  // spatially constant: first point representative
    y[nc + c] = gd.data[c];
  }
  return y;
}

void unpack_state(const BoundaryModel& m, const State& y, SymTensorField& g, SymTensorField& gd) {
  g = SymTensorField::zero(m);
  gd = SymTensorField::zero(m);
  if (!m.is_grid()) {
    for (int b = 0; b < m.block_count(); ++b) {
      g.data[b] = static_cast<double>(y[b]);
      gd.data[b] = static_cast<double>(y[m.block_count() + b]);
    }
    return;
  }
  const std::size_t nc = m.sym_components();
  for (std::size_t p = 0; p < m.grid_points(); ++p)
    for (std::size_t c = 0; c < nc; ++c) {
      g.data[p * nc + c] = static_cast<double>(y[c]);
      gd.data[p * nc + c] = static_cast<double>(y[nc + c]);
    }
}

std::vector<double> make_sample_grid(double t0, double t1, const EvolveOptions& opts) {
  if (!opts.sample_ts.empty()) {
    for (double t : opts.sample_ts)
      if (t < t0 - 1e-14 || t > t1 + 1e-14) reject("bad-grid", "sample times outside [t0, t1]");
    return opts.sample_ts;
  }
  int nsmp = opts.samples;
  if (nsmp <= 0) nsmp = std::clamp(static_cast<int>((t1 - t0) / 5e-4) + 1, 200, 4000);
  std::vector<double> ts(nsmp);
  for (int i = 0; i < nsmp; ++i) ts[i] = t0 + (t1 - t0) * i / (nsmp - 1.0);
  ts.back() = t1;
  return ts;
}

MetricCurve integrate(const BoundaryModel& m, State y0, double t0, double t1, double tol,
                      const EvolveOptions& opts) {
  namespace ode = boost::numeric::odeint;
  MetricCurve curve;
  curve.model = m;
  const std::vector<double> ts_d = make_sample_grid(t0, t1, opts);
  const std::vector<Scalar> ts(ts_d.begin(), ts_d.end());

  const Scalar eps = Scalar(tol) * Scalar(opts.internal_safety);
  auto stepper = ode::make_controlled(eps, eps,
                                      ode::runge_kutta_fehlberg78<State, Scalar>());

  auto observe = [&](const State& y, Scalar t) {
    if (!state_positive(m, y)) throw PositivityLost{static_cast<double>(t)};
    SymTensorField g = SymTensorField::zero(m), gd = SymTensorField::zero(m);
    unpack_state(m, y, g, gd);
    curve.t_grid.push_back(static_cast<double>(t));
    curve.values.push_back(std::move(g));
    curve.derivs.push_back(std::move(gd));
  };

  try {
    if (!m.is_grid()) {
      BlockRhs rhs{m.block_dims(), m.ricci_blocks(), m.n};
      ode::integrate_times(stepper, rhs, y0, ts.begin(), ts.end(), Scalar(1e-4), observe);
    } else {
      ConstantTorusRhs rhs{m.n};
      ode::integrate_times(stepper, rhs, y0, ts.begin(), ts.end(), Scalar(1e-4), observe);
    }
  } catch (const PositivityLost& lost) {
    curve.status = CurveStatus::LostPositivity;
    curve.failure_t = lost.t;
  }
  if (curve.t_grid.empty())
    numerical_failure("integration-failed", "no samples produced by the integrator");
  return curve;
}

}  // namespace

MetricCurve evolve(const FGSeries& seed, double t0, double t1, double tol,
                   const EvolveOptions& opts) {
  const BoundaryModel& m = seed.model;
  if (!(tol > 0.0)) reject("bad-tolerance", "ode tolerance must be positive");
  if (!(0.0 < t0 && t0 < t1 && t1 <= seed.t_max + 1e-12))
    reject("bad-window", "need 0 < t0 < t1 <= t_max");
  if (t0 < 1e-6)
    reject("singular-point", "t0 too close to the regular singular point t = 0");
  if (seed.K < seed.n + 2) reject("bad-order", "series truncation order must be >= n + 2");
  if (m.is_grid()) {
    const double scale = 1.0 + seed.gamma().max_abs();
    for (const auto& c : seed.coeffs)
      if (!c.spatially_constant(1e-12 * scale))
        reject("unsupported-torus-evolution",
               "torus evolution supports spatially constant data only");
  }
  const double seed_residual = radial_residual_norm(seed, t0);
  if (seed_residual > tol)
    reject("seed-residual", "series residual at t0 exceeds the ode tolerance; "
                            "increase K or t0");
  auto [g0, gd0] = eval(seed, t0);
  return integrate(m, pack_state(m, g0, gd0), t0, t1, tol, opts);
}

MetricCurve evolve_from_state(const SymTensorField& g0, const SymTensorField& gd0, double t0,
                              double t1, double tol, const EvolveOptions& opts) {
  require_same_model(g0.model, gd0.model, "evolve_from_state");
  if (!(0.0 < t0 && t0 < t1)) reject("bad-window", "need 0 < t0 < t1");
  if (g0.model.is_grid()) {
    const double scale = 1.0 + g0.max_abs();
    if (!g0.spatially_constant(1e-12 * scale) || !gd0.spatially_constant(1e-12 * scale))
      reject("unsupported-torus-evolution",
             "torus evolution supports spatially constant data only");
  }
  return integrate(g0.model, pack_state(g0.model, g0, gd0), t0, t1, tol, opts);
}

namespace {

// first derivative of sampled data; 5-point 4th-order stencils on uniform
// grids, quadratic fit otherwise
std::vector<double> divided_derivative(const std::vector<double>& t,
                                       const std::vector<double>& f) {
  const std::size_t N = t.size();
  std::vector<double> out(N, 0.0);
  if (N < 3) return out;
  bool uniform = true;
  const double h = t[1] - t[0];
  for (std::size_t i = 1; i + 1 < N; ++i)
    if (std::abs((t[i + 1] - t[i]) - h) > 1e-9 * h) uniform = false;
  if (uniform && N >= 5) {
    for (std::size_t i = 2; i + 2 < N; ++i)
      out[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
    out[0] = (-25 * f[0] + 48 * f[1] - 36 * f[2] + 16 * f[3] - 3 * f[4]) / (12 * h);
    out[1] = (-3 * f[0] - 10 * f[1] + 18 * f[2] - 6 * f[3] + f[4]) / (12 * h);
    out[N - 2] = (3 * f[N - 1] + 10 * f[N - 2] - 18 * f[N - 3] + 6 * f[N - 4] - f[N - 5]) /
                 (12 * h);
    out[N - 1] = (25 * f[N - 1] - 48 * f[N - 2] + 36 * f[N - 3] - 16 * f[N - 4] +
                  3 * f[N - 5]) /
                 (12 * h);
    return out;
  }
  for (std::size_t i = 0; i < N; ++i) {
    const std::size_t a = (i == 0) ? 0 : (i == N - 1 ? N - 3 : i - 1);
    const double t0 = t[a], t1 = t[a + 1], t2 = t[a + 2], x = t[i];
    const double f0 = f[a], f1 = f[a + 1], f2 = f[a + 2];
    // derivative of the quadratic through the three points
    out[i] = f0 * (2 * x - t1 - t2) / ((t0 - t1) * (t0 - t2)) +
             f1 * (2 * x - t0 - t2) / ((t1 - t0) * (t1 - t2)) +
             f2 * (2 * x - t0 - t1) / ((t2 - t0) * (t2 - t1));
  }
  return out;
}

}  // namespace

ConstraintReport constraint_residuals(const MetricCurve& curve) {
  const BoundaryModel& m = curve.model;
  const std::size_t N = curve.t_grid.size();
  if (N < 3) reject("bad-curve", "constraint residuals need at least 3 samples");
  const SymTensorField gamma = metric_of(m);
  const int n = m.n;
  const std::size_t np = m.is_grid() ? m.grid_points() : 1;

  // per-sample mean curvature field H̄ = ½ tr(g^{-1} ġ) and |A|² = ¼ tr((g^{-1}ġ)²)
  std::vector<std::vector<double>> Hs(N, std::vector<double>(np));
  std::vector<std::vector<double>> A2s(N, std::vector<double>(np));
  ConstraintReport rep;
  rep.records.resize(N);
  for (std::size_t s = 0; s < N; ++s) {
    const SymTensorField& g = curve.values[s];
    const SymTensorField& gd = curve.derivs[s];
    const double t = curve.t_grid[s];
    ScalarField ham = ScalarField::zero(m);
    SymTensorField codazzi = SymTensorField::zero(m);
    ScalarField Rslice = scalar_curvature(g);
    if (m.is_grid()) {
      for (std::size_t p = 0; p < np; ++p) {
        const Eigen::MatrixXd gv = g.matrix_at(p);
        const Eigen::MatrixXd M = gv.inverse() * gd.matrix_at(p);
        const double H = 0.5 * M.trace();
        const double trP2 = 0.25 * (M * M).trace();
        Hs[s][p] = H;
        A2s[s][p] = trP2;
        ham.data[p] = (2.0 * n - 2.0) * H + t * (trP2 - H * H + Rslice.data[p]);
      }
    } else {
      const auto dims = m.block_dims();
      double H = 0.0, trP2 = 0.0;
      for (int b = 0; b < m.block_count(); ++b) {
        const double M = gd.data[b] / g.data[b];
        H += 0.5 * dims[b] * M;
        trP2 += 0.25 * dims[b] * M * M;
      }
      Hs[s][0] = H;
      A2s[s][0] = trP2;
      ham.data[0] = (2.0 * n - 2.0) * H + t * (trP2 - H * H + Rslice.data[0]);
    }
    // Gauss–Codazzi: δ_{g_t}(A − H g_t) with A = ½ ġ
    {
      SymTensorField AHg = SymTensorField::zero(m);
      if (m.is_grid()) {
        for (std::size_t p = 0; p < np; ++p) {
          const Eigen::MatrixXd gv = g.matrix_at(p);
          const Eigen::MatrixXd Av = 0.5 * gd.matrix_at(p);
          const double H = Hs[s][p];
          AHg.set_matrix(p, Av - H * gv);
        }
      } else {
        for (int b = 0; b < m.block_count(); ++b)
          AHg.data[b] = 0.5 * gd.data[b] - Hs[s][0] * g.data[b];
      }
      rep.records[s].divergence = l2_norm(gamma, divergence(g, AHg));
    }
    rep.records[s].t = t;
    rep.records[s].hamiltonian = l2_norm(gamma, ham);
  }
  // Riccati trace: t Ḣ − H + t |A|², Ḣ by divided differences along the curve
  std::vector<double> rss(N, 0.0);
  for (std::size_t p = 0; p < np; ++p) {
    std::vector<double> Hline(N);
    for (std::size_t s = 0; s < N; ++s) Hline[s] = Hs[s][p];
    const std::vector<double> Hdot = divided_derivative(curve.t_grid, Hline);
    for (std::size_t s = 0; s < N; ++s) {
      const double t = curve.t_grid[s];
      const double r = t * Hdot[s] - Hline[s] + t * A2s[s][p];
      rss[s] += r * r;
    }
  }
  for (std::size_t s = 0; s < N; ++s)
    rep.records[s].riccati_trace = std::sqrt(rss[s] / static_cast<double>(np) * m.volume());
  for (const auto& r : rep.records) {
    rep.max_divergence = std::max(rep.max_divergence, r.divergence);
    rep.max_hamiltonian = std::max(rep.max_hamiltonian, r.hamiltonian);
    rep.max_riccati_trace = std::max(rep.max_riccati_trace, r.riccati_trace);
  }
  return rep;
}

SplitNorms difference(const MetricCurve& a, const MetricCurve& b) {
  require_same_model(a.model, b.model, "difference");
  if (a.t_grid.size() != b.t_grid.size()) reject("grid-mismatch", "curves sampled differently");
  for (std::size_t i = 0; i < a.t_grid.size(); ++i)
    if (std::abs(a.t_grid[i] - b.t_grid[i]) > 1e-12)
      reject("grid-mismatch", "curves sampled differently");
  const BoundaryModel& m = a.model;
  const SymTensorField gamma = metric_of(m);
  SplitNorms out;
  out.t = a.t_grid;
  for (std::size_t s = 0; s < a.t_grid.size(); ++s) {
    SymTensorField k = b.values[s] - a.values[s];
    const ScalarField tr = trace(gamma, k);
    SymTensorField trace_part = SymTensorField::zero(m);
    if (m.is_grid()) {
      const std::size_t nc = m.sym_components();
      for (std::size_t p = 0; p < m.grid_points(); ++p)
        for (std::size_t c = 0; c < nc; ++c)
          trace_part.data[p * nc + c] = tr.data[p] / m.n * gamma.data[p * nc + c];
    } else {
      for (int bidx = 0; bidx < m.block_count(); ++bidx)
        trace_part.data[bidx] = tr.data[0] / m.n * gamma.data[bidx];
    }
    out.trace_norm.push_back(l2_norm(gamma, trace_part));
    out.trace_free_norm.push_back(l2_norm(gamma, k - trace_part));
  }
  return out;
}

double radial_equation_residual(const MetricCurve& curve, std::size_t index) {
  const BoundaryModel& m = curve.model;
  const std::size_t N = curve.t_grid.size();
  if (index >= N) reject("bad-index", "sample index out of range");
  const int n = m.n;
  const double t = curve.t_grid[index];
  // g̈ from divided differences of the stored ġ samples (componentwise)
  SymTensorField gdd = SymTensorField::zero(m);
  {
    const std::size_t ncells = curve.derivs[0].data.size();
    std::vector<double> line(N);
    for (std::size_t c = 0; c < ncells; ++c) {
      for (std::size_t s = 0; s < N; ++s) line[s] = curve.derivs[s].data[c];
      gdd.data[c] = divided_derivative(curve.t_grid, line)[index];
    }
  }
  const SymTensorField& g = curve.values[index];
  const SymTensorField& gd = curve.derivs[index];
  SymTensorField F = SymTensorField::zero(m);
  const SymTensorField ric = ricci_tensor(g);
  if (m.is_grid()) {
    for (std::size_t p = 0; p < m.grid_points(); ++p) {
      const Eigen::MatrixXd gv = g.matrix_at(p);
      const Eigen::MatrixXd gdv = gd.matrix_at(p);
      const Eigen::MatrixXd M = gv.inverse() * gdv;
      const double H = 0.5 * M.trace();
      Eigen::MatrixXd Fv = t * gdd.matrix_at(p) - (n - 1.0) * gdv - 2.0 * H * gv -
                           2.0 * t * ric.matrix_at(p) + t * H * gdv - t * (gdv * M);
      F.set_matrix(p, 0.5 * (Fv + Fv.transpose()));
    }
  } else {
    const auto dims = m.block_dims();
    double H = 0.0;
    for (int b = 0; b < m.block_count(); ++b)
      H += 0.5 * dims[b] * gd.data[b] / g.data[b];
    for (int b = 0; b < m.block_count(); ++b) {
      const double M = gd.data[b] / g.data[b];
      F.data[b] = t * gdd.data[b] - (n - 1.0) * gd.data[b] - 2.0 * H * g.data[b] -
                  2.0 * t * ric.data[b] + t * H * gd.data[b] - t * gd.data[b] * M;
    }
  }
  return l2_norm(metric_of(m), F);
}

}  // namespace fglab
