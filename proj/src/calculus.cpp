#include "fglab/calculus.hpp"

#include <cmath>

#include "fglab/errors.hpp"
#include "fglab/fft.hpp"

namespace fglab {

namespace {

// derivatives of all packed components of a grid field: d[m][p*nc + c]
std::vector<std::vector<double>> component_derivatives(const BoundaryModel& m,
                                                       const std::vector<double>& data,
                                                       std::size_t ncomp) {
  auto eng = SpectralEngine::get(m);
  const std::size_t np = m.grid_points();
  std::vector<double> comp(np);
  std::vector<std::vector<double>> d(m.n, std::vector<double>(data.size(), 0.0));
  for (std::size_t c = 0; c < ncomp; ++c) {
    bool constant = true;
    for (std::size_t p = 0; p < np; ++p) {
      comp[p] = data[p * ncomp + c];
      constant = constant && comp[p] == comp[0];
    }
    if (constant) continue;
    for (int ax = 0; ax < m.n; ++ax) {
      auto dc = eng->derivative(comp, ax);
      for (std::size_t p = 0; p < np; ++p) d[ax][p * ncomp + c] = dc[p];
    }
  }
  return d;
}

struct TraceData {
  std::vector<double> dims, gamma;
};

TraceData block_data(const BoundaryModel& m) { return {m.block_dims(), m.metric_blocks()}; }

// pointwise Christoffels Γ^l_{ij} from metric values g and derivatives dg at p
void christoffel_at(const BoundaryModel& m, const SymTensorField& g,
                    const std::vector<std::vector<double>>& dg, std::size_t p,
                    Eigen::MatrixXd& ginv, std::vector<Eigen::MatrixXd>& gam) {
  const int n = m.n;
  ginv = g.matrix_at(p).inverse();
  const std::size_t nc = m.sym_components();
  for (int l = 0; l < n; ++l) gam[l].setZero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      for (int l = 0; l < n; ++l) {
        double s = 0.0;
        for (int mm = 0; mm < n; ++mm) {
          const double dgi = dg[i][p * nc + sym_index(j, mm, n)];
          const double dgj = dg[j][p * nc + sym_index(i, mm, n)];
          const double dgm = dg[mm][p * nc + sym_index(i, j, n)];
          s += ginv(l, mm) * (dgi + dgj - dgm);
        }
        gam[l](i, j) = gam[l](j, i) = 0.5 * s;
      }
    }
}

OneFormField divergence_impl(const SymTensorField& gamma,
                             const std::vector<std::vector<double>>& dgamma,
                             const SymTensorField& tau,
                             const std::vector<std::vector<double>>& dtau) {
  const BoundaryModel& m = gamma.model;
  const int n = m.n;
  const std::size_t nc = m.sym_components();
  OneFormField out = OneFormField::zero(m);
  Eigen::MatrixXd ginv(n, n);
  std::vector<Eigen::MatrixXd> gam(n, Eigen::MatrixXd(n, n));
  for (std::size_t p = 0; p < m.grid_points(); ++p) {
    christoffel_at(m, gamma, dgamma, p, ginv, gam);
    const Eigen::MatrixXd tv = tau.matrix_at(p);
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double c = dtau[i][p * nc + sym_index(j, k, n)];
          for (int l = 0; l < n; ++l) c -= gam[l](i, j) * tv(l, k) + gam[l](i, k) * tv(j, l);
          s += ginv(i, j) * c;
        }
      out.at(p, k) = -s;
    }
  }
  return out;
}

}  // namespace

SymTensorField metric_of(const BoundaryModel& m) {
  m.validate();
  if (m.is_grid()) {
    Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m.n, m.n);
    return SymTensorField::constant(m, id);
  }
  return SymTensorField::from_blocks(m, m.metric_blocks());
}

ScalarField trace(const SymTensorField& gamma, const SymTensorField& tau) {
  require_same_model(gamma.model, tau.model, "trace");
  const BoundaryModel& m = gamma.model;
  ScalarField out = ScalarField::zero(m);
  if (m.is_grid()) {
    for (std::size_t p = 0; p < m.grid_points(); ++p) {
      const Eigen::MatrixXd gi = gamma.matrix_at(p).inverse();
      out.data[p] = (gi * tau.matrix_at(p)).trace();
    }
  } else {
    const auto [d, gb] = block_data(m);
    double t = 0.0;
    for (int b = 0; b < m.block_count(); ++b) t += d[b] * tau.data[b] / gamma.data[b];
    out.data[0] = t;
  }
  return out;
}

OneFormField divergence(const SymTensorField& gamma, const SymTensorField& tau) {
  require_same_model(gamma.model, tau.model, "divergence");
  const BoundaryModel& m = gamma.model;
  if (!m.is_grid()) return OneFormField::zero(m);  // invariant tensors are parallel
  const auto dgamma = component_derivatives(m, gamma.data, m.sym_components());
  const auto dtau = component_derivatives(m, tau.data, m.sym_components());
  return divergence_impl(gamma, dgamma, tau, dtau);
}

SymTensorField killing_operator(const SymTensorField& gamma, const VectorField& X) {
  require_same_model(gamma.model, X.model, "killing_operator");
  const BoundaryModel& m = gamma.model;
  if (!m.is_grid()) return SymTensorField::zero(m);  // invariant fields generate isometries
  const int n = m.n;
  const std::size_t np = m.grid_points();
  // lower the index: ω_j = γ_{jl} X^l
  std::vector<double> omega(np * n);
  for (std::size_t p = 0; p < np; ++p)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int l = 0; l < n; ++l) s += gamma.at(p, j, l) * X.at(p, l);
      omega[p * n + j] = s;
    }
  const auto domega = component_derivatives(m, omega, n);
  const auto dgamma = component_derivatives(m, gamma.data, m.sym_components());
  SymTensorField out = SymTensorField::zero(m);
  Eigen::MatrixXd ginv(n, n);
  std::vector<Eigen::MatrixXd> gam(n, Eigen::MatrixXd(n, n));
  for (std::size_t p = 0; p < np; ++p) {
    christoffel_at(m, gamma, dgamma, p, ginv, gam);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double s = 0.5 * (domega[i][p * n + j] + domega[j][p * n + i]);
        for (int l = 0; l < n; ++l) s -= gam[l](i, j) * omega[p * n + l];
        out.at(p, i, j) = s;
      }
  }
  return out;
}

SymTensorField lie_derivative(const VectorField& X, const SymTensorField& tau) {
  require_same_model(X.model, tau.model, "lie_derivative");
  const BoundaryModel& m = tau.model;
  if (!m.is_grid()) return SymTensorField::zero(m);
  const int n = m.n;
  const std::size_t np = m.grid_points(), nc = m.sym_components();
  const auto dtau = component_derivatives(m, tau.data, nc);
  const auto dX = component_derivatives(m, X.data, n);
  SymTensorField out = SymTensorField::zero(m);
  for (std::size_t p = 0; p < np; ++p)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) {
          s += X.at(p, k) * dtau[k][p * nc + sym_index(i, j, n)];
          s += tau.at(p, k, j) * dX[i][p * n + k];
          s += tau.at(p, i, k) * dX[j][p * n + k];
        }
        out.at(p, i, j) = s;
      }
  return out;
}

double l2_pair(const SymTensorField& gamma, const SymTensorField& tau, const SymTensorField& sigma) {
  require_same_model(gamma.model, tau.model, "l2_pair");
  require_same_model(gamma.model, sigma.model, "l2_pair");
  const BoundaryModel& m = gamma.model;
  if (m.is_grid()) {
    double acc = 0.0;
    for (std::size_t p = 0; p < m.grid_points(); ++p) {
      const Eigen::MatrixXd g = gamma.matrix_at(p);
      const Eigen::MatrixXd gi = g.inverse();
      const double dens = std::sqrt(g.determinant());
      acc += (gi * tau.matrix_at(p) * gi * sigma.matrix_at(p)).trace() * dens;
    }
    double coord_vol = 1.0;
    for (double per : m.periods) coord_vol *= per;
    return acc / static_cast<double>(m.grid_points()) * coord_vol;
  }
  const auto [d, gb] = block_data(m);
  double s = 0.0;
  for (int b = 0; b < m.block_count(); ++b)
    s += d[b] * tau.data[b] * sigma.data[b] / (gamma.data[b] * gamma.data[b]);
  // homogeneous γ may differ from the model metric only by block scale
  double vol = m.volume();
  if (m.kind == ModelKind::RoundSphere)
    vol = std::pow(gamma.data[0], 0.5 * m.n) * unit_sphere_volume(m.n);
  else if (m.kind == ModelKind::CircleSphere)
    vol = m.circle_length * std::sqrt(gamma.data[0]) *
          std::pow(gamma.data[1], 0.5 * (m.n - 1)) * unit_sphere_volume(m.n - 1);
  return s * vol;
}

double pair_form_vector(const SymTensorField& gamma, const OneFormField& omega,
                        const VectorField& X) {
  require_same_model(gamma.model, omega.model, "pair_form_vector");
  require_same_model(gamma.model, X.model, "pair_form_vector");
  const BoundaryModel& m = gamma.model;
  if (!m.is_grid()) {
    // only the circle direction is representable; ω and X invariant
    if (m.kind != ModelKind::CircleSphere || omega.data.empty() || X.data.empty()) return 0.0;
    return omega.data[0] * X.data[0] * m.volume();
  }
  double acc = 0.0;
  for (std::size_t p = 0; p < m.grid_points(); ++p) {
    double v = 0.0;
    for (int a = 0; a < m.n; ++a) v += omega.at(p, a) * X.at(p, a);
    acc += v * std::sqrt(gamma.matrix_at(p).determinant());
  }
  double coord_vol = 1.0;
  for (double per : m.periods) coord_vol *= per;
  return acc / static_cast<double>(m.grid_points()) * coord_vol;
}

LinearizedDivergence divergence_linearized_checked(const SymTensorField& gamma,
                                                   const SymTensorField& h,
                                                   const SymTensorField& tau, double eps,
                                                   double check_tol) {
  require_same_model(gamma.model, h.model, "divergence_linearized");
  require_same_model(gamma.model, tau.model, "divergence_linearized");
  const BoundaryModel& m = gamma.model;
  if (!m.is_grid() || h.max_abs() == 0.0)
    return {OneFormField::zero(m), 0.0, 0.0};  // δ ≡ 0 along invariant paths
  const double scale = gamma.max_abs();
  if (eps <= 0.0) eps = 1e-5 * scale / std::max(h.max_abs(), 1e-12 * scale);

  const auto dh = component_derivatives(m, h.data, m.sym_components());
  const auto dtau = component_derivatives(m, tau.data, m.sym_components());
  const auto dgamma = component_derivatives(m, gamma.data, m.sym_components());
  const std::size_t ncell = gamma.data.size();

  auto delta_at = [&](double s) {
    SymTensorField gs = gamma;
    for (std::size_t i = 0; i < ncell; ++i) gs.data[i] += s * h.data[i];
    std::vector<std::vector<double>> dgs(m.n);
    for (int ax = 0; ax < m.n; ++ax) {
      dgs[ax] = dgamma[ax];
      for (std::size_t i = 0; i < ncell; ++i) dgs[ax][i] += s * dh[ax][i];
    }
    return divergence_impl(gs, dgs, tau, dtau);
  };

  auto central = [&](double e) {
    OneFormField d = delta_at(e) - delta_at(-e);
    d *= 1.0 / (2.0 * e);
    return d;
  };

  OneFormField d1 = central(eps);
  OneFormField d2 = central(0.5 * eps);
  double disc = (d2 - d1).max_abs();
  OneFormField rich = OneFormField::zero(m);
  for (std::size_t i = 0; i < rich.data.size(); ++i)
    rich.data[i] = (4.0 * d2.data[i] - d1.data[i]) / 3.0;
  const double ref = rich.max_abs() + tau.max_abs() / scale;
  if (disc > check_tol * (1.0 + ref))
    numerical_failure("richardson-check",
                      "divergence_linearized: Richardson consistency failure");
  return {std::move(rich), disc, eps};
}

OneFormField divergence_linearized(const SymTensorField& gamma, const SymTensorField& h,
                                   const SymTensorField& tau) {
  return divergence_linearized_checked(gamma, h, tau).value;
}

double l2_norm(const SymTensorField& gamma, const SymTensorField& tau) {
  return std::sqrt(std::max(0.0, l2_pair(gamma, tau, tau)));
}

double l2_norm(const SymTensorField& gamma, const OneFormField& omega) {
  const BoundaryModel& m = gamma.model;
  if (!m.is_grid()) {
    if (m.kind != ModelKind::CircleSphere || omega.data.empty()) return 0.0;
    return std::abs(omega.data[0]) / std::sqrt(gamma.data[0]) * std::sqrt(m.volume());
  }
  double acc = 0.0;
  for (std::size_t p = 0; p < m.grid_points(); ++p) {
    const Eigen::MatrixXd g = gamma.matrix_at(p);
    const Eigen::MatrixXd gi = g.inverse();
    double v = 0.0;
    for (int a = 0; a < m.n; ++a)
      for (int b = 0; b < m.n; ++b) v += gi(a, b) * omega.at(p, a) * omega.at(p, b);
    acc += v * std::sqrt(g.determinant());
  }
  double coord_vol = 1.0;
  for (double per : m.periods) coord_vol *= per;
  return std::sqrt(std::max(0.0, acc / static_cast<double>(m.grid_points()) * coord_vol));
}

double l2_norm(const SymTensorField& gamma, const ScalarField& f) {
  const BoundaryModel& m = gamma.model;
  if (!m.is_grid()) return std::abs(f.data[0]) * std::sqrt(m.volume());
  double acc = 0.0;
  for (std::size_t p = 0; p < m.grid_points(); ++p)
    acc += f.data[p] * f.data[p] * std::sqrt(gamma.matrix_at(p).determinant());
  double coord_vol = 1.0;
  for (double per : m.periods) coord_vol *= per;
  return std::sqrt(std::max(0.0, acc / static_cast<double>(m.grid_points()) * coord_vol));
}

SymTensorField ricci_tensor(const SymTensorField& metric) {
  const BoundaryModel& m = metric.model;
  if (!m.is_grid()) {
    auto ric = m.ricci_blocks();
    return SymTensorField::from_blocks(m, ric);
  }
  const int n = m.n;
  const std::size_t np = m.grid_points(), nc = m.sym_components();
  const auto dg = component_derivatives(m, metric.data, nc);
  // Γ^l_{ij} as a packed field: [p][(l * nc) + sym(i,j)]
  std::vector<double> gam_field(np * n * nc);
  {
    Eigen::MatrixXd ginv(n, n);
    std::vector<Eigen::MatrixXd> gam(n, Eigen::MatrixXd(n, n));
    for (std::size_t p = 0; p < np; ++p) {
      christoffel_at(m, metric, dg, p, ginv, gam);
      for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
          for (int j = i; j < n; ++j)
            gam_field[p * n * nc + l * nc + sym_index(i, j, n)] = gam[l](i, j);
    }
  }
  const auto dgam = component_derivatives(m, gam_field, n * nc);
  SymTensorField out = SymTensorField::zero(m);
  for (std::size_t p = 0; p < np; ++p) {
    auto G = [&](int l, int i, int j) {
      return gam_field[p * n * nc + l * nc + sym_index(i, j, n)];
    };
    auto dG = [&](int mm, int l, int i, int j) {
      return dgam[mm][p * n * nc + l * nc + sym_index(i, j, n)];
    };
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) {
          s += dG(l, l, i, j) - dG(i, l, l, j);
          for (int mm = 0; mm < n; ++mm)
            s += G(l, l, mm) * G(mm, i, j) - G(l, i, mm) * G(mm, l, j);
        }
        out.at(p, i, j) = s;
      }
  }
  return out;
}

ScalarField scalar_curvature(const SymTensorField& metric) {
  const BoundaryModel& m = metric.model;
  if (!m.is_grid()) {
    const auto d = m.block_dims();
    const auto ric = m.ricci_blocks();
    double r = 0.0;
    for (int b = 0; b < m.block_count(); ++b) r += d[b] * ric[b] / metric.data[b];
    return ScalarField::constant(m, r);
  }
  return trace(metric, ricci_tensor(metric));
}

SymTensorField tt_project(const SymTensorField& tau) {
  const BoundaryModel& m = tau.model;
  if (!m.is_grid()) {
    // remove the γ-trace within the invariant blocks
    const SymTensorField gamma = metric_of(m);
    const double tr = trace(gamma, tau).data[0];
    SymTensorField out = tau;
    for (int b = 0; b < m.block_count(); ++b) out.data[b] -= tr / m.n * gamma.data[b];
    return out;
  }
  const int n = m.n;
  const std::size_t np = m.grid_points(), nc = m.sym_components();
  auto eng = SpectralEngine::get(m);
  // component spectra
  std::vector<std::vector<std::complex<double>>> spec(nc);
  {
    std::vector<double> comp(np);
    for (std::size_t c = 0; c < nc; ++c) {
      for (std::size_t p = 0; p < np; ++p) comp[p] = tau.data[p * nc + c];
      spec[c] = eng->forward(comp);
    }
  }
  // per-mode TT projection w.r.t. the flat metric
  Eigen::MatrixXcd S(n, n);
  for (std::size_t p = 0; p < np; ++p) {
    Eigen::VectorXd k(n);
    for (int a = 0; a < n; ++a) k(a) = eng->wave(a, p);
    const double k2 = k.squaredNorm();
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) S(i, j) = S(j, i) = spec[sym_index(i, j, n)][p];
    Eigen::MatrixXcd P;
    if (k2 == 0.0) {
      P = S - (S.trace() / double(n)) * Eigen::MatrixXcd::Identity(n, n);
    } else {
      Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(n, n) - (k * k.transpose()) / k2;
      P = Q * S * Q;
      P -= (P.trace() / double(n - 1)) * Q;
    }
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) spec[sym_index(i, j, n)][p] = P(i, j);
  }
  SymTensorField out = SymTensorField::zero(m);
  for (std::size_t c = 0; c < nc; ++c) {
    auto comp = eng->backward_real(spec[c]);
    for (std::size_t p = 0; p < np; ++p) out.data[p * nc + c] = comp[p];
  }
  return out;
}

double total_divergence_of_contraction(const SymTensorField& gamma, const SymTensorField& tau,
                                       const VectorField& X) {
  const BoundaryModel& m = gamma.model;
  if (!m.is_grid()) return 0.0;
  // ∫ ∇^i (τ_{ij} X^j) dV = mean of ∂_i(√det γ · γ^{ia} τ_{ab} X^b); spectral
  // mean of an exact derivative — the Stokes check.
  const int n = m.n;
  const std::size_t np = m.grid_points();
  auto eng = SpectralEngine::get(m);
  std::vector<std::vector<double>> flux(n, std::vector<double>(np));
  for (std::size_t p = 0; p < np; ++p) {
    const Eigen::MatrixXd g = gamma.matrix_at(p);
    const Eigen::MatrixXd gi = g.inverse();
    const double dens = std::sqrt(g.determinant());
    const Eigen::MatrixXd tv = tau.matrix_at(p);
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) s += gi(i, a) * tv(a, b) * X.at(p, b);
      flux[i][p] = dens * s;
    }
  }
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    auto d = eng->derivative(flux[i], i);
    for (std::size_t p = 0; p < np; ++p) acc += d[p];
  }
  double coord_vol = 1.0;
  for (double per : m.periods) coord_vol *= per;
  // sign convention: δ of a one-form is minus the coordinate divergence
  return -acc / static_cast<double>(np) * coord_vol;
}

}  // namespace fglab
