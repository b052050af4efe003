#pragma once

// Test-only oracles, independent of the library's spectral code paths.

#include <cmath>
#include <vector>

#include "fglab/fields.hpp"

namespace fglab::test {

// 4th-order centered finite-difference derivative of a grid scalar along an axis
inline std::vector<double> fd_derivative(const BoundaryModel& m, const std::vector<double>& f,
                                         int axis) {
  const std::size_t np = m.grid_points();
  const std::size_t stride = m.stride(axis);
  const std::size_t N = static_cast<std::size_t>(m.resolution[axis]);
  const double h = m.periods[axis] / m.resolution[axis];
  std::vector<double> out(np);
  auto shift = [&](std::size_t p, long long k) {
    const std::size_t block = (p / (stride * N)) * (stride * N);
    const std::size_t inner = p % stride;
    const long long idx = static_cast<long long>((p / stride) % N);
    const long long j = ((idx + k) % static_cast<long long>(N) + N) % static_cast<long long>(N);
    return block + static_cast<std::size_t>(j) * stride + inner;
  };
  for (std::size_t p = 0; p < np; ++p)
    out[p] = (f[shift(p, -2)] - 8.0 * f[shift(p, -1)] + 8.0 * f[shift(p, 1)] -
              f[shift(p, 2)]) /
             (12.0 * h);
  return out;
}

// covariant divergence (δτ)_k = −g^{ij}(∂_i τ_{jk} − Γ^l_{ij} τ_{lk} − Γ^l_{ik} τ_{jl})
// built entirely from finite differences
inline OneFormField fd_divergence(const SymTensorField& gamma, const SymTensorField& tau) {
  const BoundaryModel& m = gamma.model;
  const int n = m.n;
  const std::size_t np = m.grid_points();
  const std::size_t nc = m.sym_components();
  std::vector<std::vector<double>> dg(n), dt(n);
  {
    std::vector<double> comp(np);
    for (int ax = 0; ax < n; ++ax) {
      dg[ax].assign(np * nc, 0.0);
      dt[ax].assign(np * nc, 0.0);
    }
    for (std::size_t c = 0; c < nc; ++c) {
      for (std::size_t p = 0; p < np; ++p) comp[p] = gamma.data[p * nc + c];
      for (int ax = 0; ax < n; ++ax) {
        auto d = fd_derivative(m, comp, ax);
        for (std::size_t p = 0; p < np; ++p) dg[ax][p * nc + c] = d[p];
      }
      for (std::size_t p = 0; p < np; ++p) comp[p] = tau.data[p * nc + c];
      for (int ax = 0; ax < n; ++ax) {
        auto d = fd_derivative(m, comp, ax);
        for (std::size_t p = 0; p < np; ++p) dt[ax][p * nc + c] = d[p];
      }
    }
  }
  OneFormField out = OneFormField::zero(m);
  for (std::size_t p = 0; p < np; ++p) {
    const Eigen::MatrixXd gi = gamma.matrix_at(p).inverse();
    const Eigen::MatrixXd tv = tau.matrix_at(p);
    std::vector<Eigen::MatrixXd> gam(n, Eigen::MatrixXd::Zero(n, n));
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          double s = 0.0;
          for (int mm = 0; mm < n; ++mm)
            s += gi(l, mm) * (dg[i][p * nc + sym_index(j, mm, n)] +
                              dg[j][p * nc + sym_index(i, mm, n)] -
                              dg[mm][p * nc + sym_index(i, j, n)]);
          gam[l](i, j) = gam[l](j, i) = 0.5 * s;
        }
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double c = dt[i][p * nc + sym_index(j, k, n)];
          for (int l = 0; l < n; ++l) c -= gam[l](i, j) * tv(l, k) + gam[l](i, k) * tv(j, l);
          s += gi(i, j) * c;
        }
      out.at(p, k) = -s;
    }
  }
  return out;
}

// closed-form Poincare block value on S^n(a): a² (1 − t²/(4a²))²
inline double poincare_block(double t, double a = 1.0) {
  const double phi = 1.0 - t * t / (4.0 * a * a);
  return a * a * phi * phi;
}

}  // namespace fglab::test
