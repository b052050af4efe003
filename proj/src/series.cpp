#include "fglab/series.hpp"

#include <cmath>

#include "fglab/calculus.hpp"
#include "fglab/errors.hpp"
#include "fglab/fft.hpp"

namespace fglab {

namespace {

// ---------------------------------------------------------------- blocks ---

using Poly = std::vector<double>;  // coefficient k at index k

Poly poly_mul(const Poly& a, const Poly& b, int K) {
  Poly out(K + 1, 0.0);
  for (int i = 0; i <= K && i < static_cast<int>(a.size()); ++i) {
    if (a[i] == 0.0) continue;
    for (int j = 0; j + i <= K && j < static_cast<int>(b.size()); ++j)
      out[i + j] += a[i] * b[j];
  }
  return out;
}

Poly poly_inv(const Poly& a, int K) {
  Poly out(K + 1, 0.0);
  out[0] = 1.0 / a[0];
  for (int k = 1; k <= K; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k && j < static_cast<int>(a.size()); ++j) s += a[j] * out[k - j];
    out[k] = -s / a[0];
  }
  return out;
}

Poly poly_dt(const Poly& a) {
  Poly out(a.size(), 0.0);
  for (std::size_t k = 1; k < a.size(); ++k) out[k - 1] = a[k] * static_cast<double>(k);
  return out;
}

Poly poly_shift_t(const Poly& a) {  // multiply by t
  Poly out(a.size(), 0.0);
  for (std::size_t k = 0; k + 1 < a.size(); ++k) out[k + 1] = a[k];
  return out;
}

struct BlockSource {
  std::vector<double> tangential;  // per block, coeff of t^{k-1} of F
  double riccati = 0.0;            // coeff of t^{k-1} of tH' - H + t|A|^2
};

// F and Riccati sources at order k for the candidate coefficients A (a_k = 0)
BlockSource block_sources(const BoundaryModel& m, const std::vector<std::vector<double>>& A,
                          int k) {
  const int K = k;  // series arithmetic truncated at t^k
  const auto dims = m.block_dims();
  const auto ric = m.ricci_blocks();
  const int nb = m.block_count();
  const int n = m.n;
  std::vector<Poly> g(nb), gd(nb), gdd(nb), M(nb);
  for (int b = 0; b < nb; ++b) {
    g[b].assign(K + 1, 0.0);
    for (int j = 0; j <= K && j < static_cast<int>(A.size()); ++j) g[b][j] = A[j][b];
    gd[b] = poly_dt(g[b]);
    gdd[b] = poly_dt(gd[b]);
    M[b] = poly_mul(poly_inv(g[b], K), gd[b], K);
  }
  Poly H(K + 1, 0.0), A2(K + 1, 0.0);
  for (int b = 0; b < nb; ++b)
    for (int j = 0; j <= K; ++j) {
      H[j] += 0.5 * dims[b] * M[b][j];
    }
  for (int b = 0; b < nb; ++b) {
    Poly m2 = poly_mul(M[b], M[b], K);
    for (int j = 0; j <= K; ++j) A2[j] += 0.25 * dims[b] * m2[j];
  }
  BlockSource src;
  src.tangential.assign(nb, 0.0);
  for (int b = 0; b < nb; ++b) {
    Poly F = poly_shift_t(gdd[b]);
    for (int j = 0; j <= K; ++j) F[j] -= (n - 1) * gd[b][j];
    Poly Hg = poly_mul(H, g[b], K);
    for (int j = 0; j <= K; ++j) F[j] -= 2.0 * Hg[j];
    if (K >= 1) F[1] -= 2.0 * ric[b];
    Poly tHgd = poly_shift_t(poly_mul(H, gd[b], K));
    for (int j = 0; j <= K; ++j) F[j] += tHgd[j];
    Poly tgd2 = poly_shift_t(poly_mul(gd[b], M[b], K));
    for (int j = 0; j <= K; ++j) F[j] -= tgd2[j];
    src.tangential[b] = F[k - 1];
  }
  Poly R = poly_shift_t(poly_dt(H));
  for (int j = 0; j <= K; ++j) R[j] -= H[j];
  Poly tA2 = poly_shift_t(A2);
  for (int j = 0; j <= K; ++j) R[j] += tA2[j];
  src.riccati = R[k - 1];
  return src;
}

// ------------------------------------------------------------------ grid ---

// Full-matrix grid field (n x n per point), used for g^{-1} and g^{-1} ġ.
using MatField = std::vector<double>;

struct GridEngine {
  const BoundaryModel& m;
  int n;
  std::size_t np, nc;
  Eigen::MatrixXd gamma0, ginv0;
  std::shared_ptr<SpectralEngine> fft;

  explicit GridEngine(const BoundaryModel& model, const SymTensorField& gamma)
      : m(model),
        n(model.n),
        np(model.grid_points()),
        nc(model.sym_components()),
        fft(SpectralEngine::get(model)) {
    if (!gamma.spatially_constant(1e-13 * (1.0 + gamma.max_abs())))
      reject("unsupported-boundary-metric",
             "torus expansion requires a constant-coefficient boundary metric");
    gamma0 = gamma.matrix_at(0);
    ginv0 = gamma0.inverse();
  }

  // source of the tangential matching at order k and of the Riccati matching,
  // with candidate a_k = 0
  void sources(const std::vector<SymTensorField>& a,
               const std::vector<std::vector<std::vector<double>>>& da, int k,
               SymTensorField& S_out, ScalarField& R_out) const {
    const int P = k - 1;  // highest series index needed
    const int kmax = static_cast<int>(a.size()) - 1;
    auto sym_at = [&](int ord) -> const SymTensorField* {
      return (ord <= kmax) ? &a[ord] : nullptr;
    };
    // g^{-1} series as full matrices
    std::vector<MatField> ginv(P + 1, MatField(np * n * n, 0.0));
    for (std::size_t p = 0; p < np; ++p)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) ginv[0][p * n * n + i * n + j] = ginv0(i, j);
    Eigen::MatrixXd acc(n, n), tmp(n, n);
    for (int ord = 1; ord <= P; ++ord) {
      for (std::size_t p = 0; p < np; ++p) {
        acc.setZero();
        for (int i = 1; i <= ord; ++i) {
          if (const SymTensorField* ai = sym_at(i)) {
            const Eigen::MatrixXd av = ai->matrix_at(p);
            for (int r = 0; r < n; ++r)
              for (int c = 0; c < n; ++c) tmp(r, c) = ginv[ord - i][p * n * n + r * n + c];
            acc += av * tmp;
          }
        }
        const Eigen::MatrixXd v = -ginv0 * acc;
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c) ginv[ord][p * n * n + r * n + c] = v(r, c);
      }
    }
    // M = g^{-1} ġ; H = ½ tr M; |A|² = ¼ tr(M²)
    auto gd_at = [&](int ord, std::size_t p) -> Eigen::MatrixXd {
      if (const SymTensorField* f = sym_at(ord + 1)) return (ord + 1) * f->matrix_at(p);
      return Eigen::MatrixXd::Zero(n, n);
    };
    std::vector<MatField> M(P + 1, MatField(np * n * n, 0.0));
    std::vector<std::vector<double>> H(P + 1, std::vector<double>(np, 0.0));
    std::vector<std::vector<double>> A2(P + 1, std::vector<double>(np, 0.0));
    for (int ord = 0; ord <= P; ++ord)
      for (std::size_t p = 0; p < np; ++p) {
        acc.setZero();
        for (int i = 0; i <= ord; ++i) {
          for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) tmp(r, c) = ginv[i][p * n * n + r * n + c];
          acc += tmp * gd_at(ord - i, p);
        }
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c) M[ord][p * n * n + r * n + c] = acc(r, c);
        H[ord][p] = 0.5 * acc.trace();
      }
    for (int ord = 0; ord <= P; ++ord)
      for (std::size_t p = 0; p < np; ++p) {
        double s = 0.0;
        for (int i = 0; i <= ord; ++i)
          for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
              s += M[i][p * n * n + r * n + c] * M[ord - i][p * n * n + c * n + r];
        A2[ord][p] = 0.25 * s;
      }
    // Ricci series of the slice metric: Γ^l_{ij} per order, packed [l][sym ij].
    // Only orders <= P-1 enter (the Ricci term carries a factor of t).
    const int Pric = P - 1;
    std::vector<std::vector<double>> Gam(std::max(Pric + 1, 0));
    std::vector<SymTensorField> Ric(std::max(Pric + 1, 0), SymTensorField::zero(m));
    for (int ord = 0; ord <= Pric; ++ord) {
      Gam[ord].assign(np * n * nc, 0.0);
      for (std::size_t p = 0; p < np; ++p) {
        for (int i = 0; i < n; ++i)
          for (int j = i; j < n; ++j)
            for (int l = 0; l < n; ++l) {
              double s = 0.0;
              for (int q = 0; q <= ord; ++q) {
                const int pg = ord - q;  // order of ginv factor
                if (q > kmax || da[q].empty()) continue;
                for (int mm = 0; mm < n; ++mm) {
                  const double dgi = da[q][i][p * nc + sym_index(j, mm, n)];
                  const double dgj = da[q][j][p * nc + sym_index(i, mm, n)];
                  const double dgm = da[q][mm][p * nc + sym_index(i, j, n)];
                  s += ginv[pg][p * n * n + l * n + mm] * (dgi + dgj - dgm);
                }
              }
              Gam[ord][p * n * nc + l * nc + sym_index(i, j, n)] = 0.5 * s;
            }
      }
      // linear part: ∂_l Γ^l_{ij} − ∂_i Γ^l_{lj}
      {
        std::vector<double> comp(np);
        std::vector<std::vector<double>> dgam(n);
        for (int ax = 0; ax < n; ++ax) dgam[ax].assign(np * n * nc, 0.0);
        for (std::size_t c = 0; c < n * nc; ++c) {
          for (std::size_t p = 0; p < np; ++p) comp[p] = Gam[ord][p * n * nc + c];
          for (int ax = 0; ax < n; ++ax) {
            auto d = fft->derivative(comp, ax);
            for (std::size_t p = 0; p < np; ++p) dgam[ax][p * n * nc + c] = d[p];
          }
        }
        for (std::size_t p = 0; p < np; ++p)
          for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
              double s = 0.0;
              for (int l = 0; l < n; ++l)
                s += dgam[l][p * n * nc + l * nc + sym_index(i, j, n)] -
                     dgam[i][p * n * nc + l * nc + sym_index(l, j, n)];
              Ric[ord].at(p, i, j) += s;
            }
      }
      // quadratic part: Σ_{u+v=ord} Γ_u^l_{lm} Γ_v^m_{ij} − Γ_u^l_{im} Γ_v^m_{lj}
      for (int u = 0; u <= ord; ++u) {
        const int v = ord - u;
        for (std::size_t p = 0; p < np; ++p) {
          auto GU = [&](int l, int i2, int j2) {
            return Gam[u][p * n * nc + l * nc + sym_index(i2, j2, n)];
          };
          auto GV = [&](int l, int i2, int j2) {
            return Gam[v][p * n * nc + l * nc + sym_index(i2, j2, n)];
          };
          for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
              double s = 0.0;
              for (int l = 0; l < n; ++l)
                for (int mm = 0; mm < n; ++mm) {
                  s += GU(l, l, mm) * GV(mm, i, j);
                  // symmetrize the second contraction in (i, j)
                  s -= 0.5 * (GU(l, i, mm) * GV(mm, l, j) + GU(l, j, mm) * GV(mm, l, i));
                }
              Ric[ord].at(p, i, j) += s;
            }
        }
      }
    }
    // assemble F_{k-1} and Riccati_{k-1}; the a_k terms of t g̈, −(n−1)ġ and
    // −2Hg form the indicial operator and vanish for the zero candidate
    S_out = SymTensorField::zero(m);
    for (std::size_t p = 0; p < np; ++p) {
      Eigen::MatrixXd F = Eigen::MatrixXd::Zero(n, n);
      for (int i = 0; i <= P; ++i) {
        // −2 H g
        if (const SymTensorField* f = sym_at(P - i)) F -= 2.0 * H[i][p] * f->matrix_at(p);
      }
      if (Pric >= 0) F -= 2.0 * Ric[Pric].matrix_at(p);
      for (int i = 0; i + 1 <= P; ++i) {
        // + t H ġ : coeff t^{k-1} = Σ_{i+j=k-2} H_i ġ_j
        F += H[i][p] * gd_at(P - 1 - i, p);
        // − t (ġ)² : (ġ)²_j = Σ ġ_u M_v, symmetrized
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c) tmp(r, c) = M[P - 1 - i][p * n * n + r * n + c];
        const Eigen::MatrixXd prod = gd_at(i, p) * tmp;
        F -= 0.5 * (prod + prod.transpose());
      }
      S_out.set_matrix(p, F);
    }
    R_out = ScalarField::zero(m);
    for (std::size_t p = 0; p < np; ++p) {
      // t H' − H + t|A|² at t^{k-1}: tH' coeff = (k-1+? ) ... tH' coeff t^{j} = j H_j
      double v = P * H[P][p] - H[P][p];
      if (P >= 1) v += A2[P - 1][p];
      R_out.data[p] = v;
    }
  }
};

double default_t_max(const BoundaryModel& m) {
  return (m.kind == ModelKind::RoundSphere) ? 1.0 : 0.5;
}

}  // namespace

FGSeries expand(const SymTensorField& gamma, const SymTensorField& g_n, int K,
                const ExpandOptions& opts) {
  require_same_model(gamma.model, g_n.model, "expand");
  const BoundaryModel& m = gamma.model;
  const int n = m.n;
  if (K < 0) reject("bad-order", "truncation order must be nonnegative");
  if (n % 2 == 0 && K >= n && !opts.allow_log_detection)
    reject("log-resonance",
           "even boundary dimension with K >= n requires opting into log handling");
  if (n % 2 == 1 && K >= n) {
    // g_(n) must be transverse-traceless w.r.t. γ
    const double scale = 1.0 + l2_norm(gamma, g_n);
    const double tr_res = l2_norm(gamma, trace(gamma, g_n));
    const double div_res = l2_norm(gamma, divergence(gamma, g_n));
    if (tr_res > opts.tt_tol * scale || div_res > opts.tt_tol * scale)
      reject("non-tt-data", "prescribed g_(n) is not transverse-traceless");
  }

  FGSeries out;
  out.model = m;
  out.n = n;
  out.K = K;
  out.t_max = opts.t_max > 0.0 ? opts.t_max : default_t_max(m);
  out.coeffs.assign(K + 1, SymTensorField::zero(m));
  out.coeffs[0] = gamma;

  const SymTensorField gamma_tensor = gamma;
  auto tf_split = [&](const SymTensorField& S, SymTensorField& tf, ScalarField& tr_part) {
    tr_part = trace(gamma_tensor, S);
    tf = S;
    if (m.is_grid()) {
      const std::size_t nc = m.sym_components();
      for (std::size_t p = 0; p < m.grid_points(); ++p)
        for (std::size_t c = 0; c < nc; ++c)
          tf.data[p * nc + c] -= tr_part.data[p] / n * gamma.data[p * nc + c];
    } else {
      for (int b = 0; b < m.block_count(); ++b)
        tf.data[b] -= tr_part.data[0] / n * gamma.data[b];
    }
  };

  if (m.is_grid()) {
    GridEngine eng(m, gamma);
    std::vector<std::vector<std::vector<double>>> da(K + 1);
    auto derivs_of = [&](const SymTensorField& f) {
      std::vector<std::vector<double>> d(m.n);
      auto fftp = SpectralEngine::get(m);
      std::vector<double> comp(m.grid_points());
      const std::size_t nc = m.sym_components();
      for (int ax = 0; ax < m.n; ++ax) d[ax].assign(f.data.size(), 0.0);
      for (std::size_t c = 0; c < nc; ++c) {
        for (std::size_t p = 0; p < m.grid_points(); ++p) comp[p] = f.data[p * nc + c];
        for (int ax = 0; ax < m.n; ++ax) {
          auto dc = fftp->derivative(comp, ax);
          for (std::size_t p = 0; p < m.grid_points(); ++p) d[ax][p * nc + c] = dc[p];
        }
      }
      return d;
    };
    da[0] = derivs_of(gamma);
    for (int k = 1; k <= K; ++k) {
      SymTensorField S = SymTensorField::zero(m);
      ScalarField R = ScalarField::zero(m);
      eng.sources(out.coeffs, da, k, S, R);
      SymTensorField Stf = SymTensorField::zero(m);
      ScalarField Str = ScalarField::zero(m);
      tf_split(S, Stf, Str);
      SymTensorField ak = SymTensorField::zero(m);
      if (k == n) {
        const double mag = l2_norm(gamma, Stf);
        if (n % 2 == 0) {
          out.log_obstruction = {Stf, mag};
        } else if (mag > 1e-8 * (1.0 + gamma.max_abs())) {
          numerical_failure("odd-order-source", "unexpected odd-order trace-free source");
        }
        ak = g_n;
        const double denom = static_cast<double>(k) * (k - 2 * n);
        for (std::size_t p = 0; p < m.grid_points(); ++p) {
          const double T = -Str.data[p] / denom;
          for (int i = 0; i < m.n; ++i)
            for (int j = i; j < m.n; ++j) ak.at(p, i, j) += T / n * gamma.at(p, i, j);
        }
      } else {
        const double denom_tf = static_cast<double>(k) * (k - n);
        for (std::size_t p = 0; p < m.grid_points(); ++p) {
          double T;
          if (k == 2 * n) {
            T = -R.data[p] / (0.5 * k * (k - 2));
          } else {
            T = -Str.data[p] / (static_cast<double>(k) * (k - 2 * n));
          }
          for (int i = 0; i < m.n; ++i)
            for (int j = i; j < m.n; ++j)
              ak.at(p, i, j) = -Stf.at(p, i, j) / denom_tf + T / n * gamma.at(p, i, j);
        }
      }
      out.coeffs[k] = ak;
      da[k] = derivs_of(ak);
    }
  } else {
    std::vector<std::vector<double>> A(K + 1, std::vector<double>(m.block_count(), 0.0));
    A[0] = gamma.data;
    const auto dims = m.block_dims();
    auto tr_blocks = [&](const std::vector<double>& v) {
      double t = 0.0;
      for (int b = 0; b < m.block_count(); ++b) t += dims[b] * v[b] / gamma.data[b];
      return t;
    };
    for (int k = 1; k <= K; ++k) {
      BlockSource src = block_sources(m, A, k);
      const double trS = tr_blocks(src.tangential);
      std::vector<double> Stf = src.tangential;
      for (int b = 0; b < m.block_count(); ++b) Stf[b] -= trS / n * gamma.data[b];
      std::vector<double>& ak = A[k];
      if (k == n) {
        const double mag = l2_norm(gamma, SymTensorField::from_blocks(m, Stf));
        if (n % 2 == 0) {
          out.log_obstruction = {SymTensorField::from_blocks(m, Stf), mag};
        } else if (mag > 1e-8 * (1.0 + gamma.max_abs())) {
          numerical_failure("odd-order-source", "unexpected odd-order trace-free source");
        }
        const double T = -trS / (static_cast<double>(k) * (k - 2 * n));
        for (int b = 0; b < m.block_count(); ++b)
          ak[b] = g_n.data[b] + T / n * gamma.data[b];
      } else {
        double T;
        if (k == 2 * n) {
          T = -src.riccati / (0.5 * k * (k - 2));
        } else {
          T = -trS / (static_cast<double>(k) * (k - 2 * n));
        }
        for (int b = 0; b < m.block_count(); ++b)
          ak[b] = -Stf[b] / (static_cast<double>(k) * (k - n)) + T / n * gamma.data[b];
      }
      out.coeffs[k] = SymTensorField::from_blocks(m, ak);
    }
  }
  return out;
}

std::pair<SymTensorField, SymTensorField> eval(const FGSeries& s, double t) {
  SymTensorField g = SymTensorField::zero(s.model);
  SymTensorField gd = SymTensorField::zero(s.model);
  for (int k = s.K; k >= 0; --k) {
    const double tk = std::pow(t, k);
    for (std::size_t i = 0; i < g.data.size(); ++i) {
      g.data[i] += s.coeffs[k].data[i] * tk;
      if (k >= 1) gd.data[i] += k * s.coeffs[k].data[i] * (k == 1 ? 1.0 : std::pow(t, k - 1));
    }
  }
  return {std::move(g), std::move(gd)};
}

std::pair<double, double> indicial_roots(const RadialOperatorSpec& spec) {
  if (!(spec.c > -1.0)) reject("bad-operator", "drop coefficient must satisfy c > -1");
  return {0.0, spec.c + 1.0};
}

double resonance_check(const SymTensorField& gamma, int n_even) {
  const BoundaryModel& m = gamma.model;
  if (m.n != n_even || n_even % 2 != 0)
    reject("bad-dimension", "resonance_check requires the model's even dimension");
  ExpandOptions opts;
  opts.allow_log_detection = true;
  FGSeries s = expand(gamma, SymTensorField::zero(m), n_even, opts);
  return s.log_obstruction ? s.log_obstruction->second : 0.0;
}

double radial_residual_norm(const FGSeries& s, double t) {
  const BoundaryModel& m = s.model;
  const int n = m.n;
  // direct evaluation of F(g)(t) from the polynomial
  SymTensorField g = SymTensorField::zero(m), gd = SymTensorField::zero(m),
                 gdd = SymTensorField::zero(m);
  for (int k = 0; k <= s.K; ++k) {
    const double tk = std::pow(t, k);
    for (std::size_t i = 0; i < g.data.size(); ++i) {
      const double c = s.coeffs[k].data[i];
      g.data[i] += c * tk;
      if (k >= 1) gd.data[i] += k * c * std::pow(t, k - 1);
      if (k >= 2) gdd.data[i] += k * (k - 1.0) * c * std::pow(t, k - 2);
    }
  }
  SymTensorField F = SymTensorField::zero(m);
  if (m.is_grid()) {
    const SymTensorField ric = ricci_tensor(g);
    for (std::size_t p = 0; p < m.grid_points(); ++p) {
      const Eigen::MatrixXd gv = g.matrix_at(p);
      const Eigen::MatrixXd gi = gv.inverse();
      const Eigen::MatrixXd gdv = gd.matrix_at(p);
      const Eigen::MatrixXd M = gi * gdv;
      const double H = 0.5 * M.trace();
      Eigen::MatrixXd Fv = t * gdd.matrix_at(p) - (n - 1.0) * gdv - 2.0 * H * gv -
                           2.0 * t * ric.matrix_at(p) + t * H * gdv - t * (gdv * M);
      F.set_matrix(p, 0.5 * (Fv + Fv.transpose()));
    }
  } else {
    const auto dims = m.block_dims();
    const auto ric = m.ricci_blocks();
    double H = 0.0;
    for (int b = 0; b < m.block_count(); ++b) H += 0.5 * dims[b] * gd.data[b] / g.data[b];
    for (int b = 0; b < m.block_count(); ++b) {
      const double M = gd.data[b] / g.data[b];
      F.data[b] = t * gdd.data[b] - (n - 1.0) * gd.data[b] - 2.0 * H * g.data[b] -
                  2.0 * t * ric[b] + t * H * gd.data[b] - t * gd.data[b] * M;
    }
  }
  return l2_norm(s.gamma(), F);
}

}  // namespace fglab
