#include "fglab/fields.hpp"

#include <algorithm>
#include <cmath>

#include "fglab/errors.hpp"

namespace fglab {

void require_same_model(const BoundaryModel& a, const BoundaryModel& b, const char* where) {
  if (!(a == b)) reject("model-mismatch", std::string("model mismatch in ") + where);
}

static double vec_max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

SymTensorField SymTensorField::zero(const BoundaryModel& m) {
  SymTensorField f;
  f.model = m;
  if (m.is_grid()) {
    f.rep = Rep::Grid;
    f.data.assign(m.grid_points() * m.sym_components(), 0.0);
  } else {
    f.rep = Rep::HomBlocks;
    f.data.assign(m.block_count(), 0.0);
  }
  return f;
}

SymTensorField SymTensorField::from_blocks(const BoundaryModel& m, std::vector<double> blocks) {
  if (m.is_grid()) reject("bad-representation", "HomBlocks only on homogeneous models");
  if (static_cast<int>(blocks.size()) != m.block_count())
    reject("bad-representation", "wrong block count");
  SymTensorField f;
  f.model = m;
  f.rep = Rep::HomBlocks;
  f.data = std::move(blocks);
  return f;
}

SymTensorField SymTensorField::constant(const BoundaryModel& torus, const Eigen::MatrixXd& value) {
  if (!torus.is_grid()) reject("bad-representation", "Grid only on FlatTorus");
  if (value.rows() != torus.n || value.cols() != torus.n ||
      (value - value.transpose()).cwiseAbs().maxCoeff() > 1e-14 * (1.0 + value.cwiseAbs().maxCoeff()))
    reject("bad-representation", "constant value must be a symmetric n x n matrix");
  SymTensorField f = zero(torus);
  for (std::size_t p = 0; p < torus.grid_points(); ++p)
    for (int i = 0; i < torus.n; ++i)
      for (int j = i; j < torus.n; ++j) f.at(p, i, j) = value(i, j);
  return f;
}

Eigen::MatrixXd SymTensorField::matrix_at(std::size_t p) const {
  const int n = model.n;
  Eigen::MatrixXd v(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) v(i, j) = v(j, i) = at(p, i, j);
  return v;
}

void SymTensorField::set_matrix(std::size_t p, const Eigen::MatrixXd& v) {
  for (int i = 0; i < model.n; ++i)
    for (int j = i; j < model.n; ++j) at(p, i, j) = 0.5 * (v(i, j) + v(j, i));
}

bool SymTensorField::spatially_constant(double tol) const {
  if (rep == Rep::HomBlocks) return true;
  const std::size_t nc = model.sym_components();
  for (std::size_t c = 0; c < nc; ++c) {
    const double v0 = data[c];
    for (std::size_t p = 1; p < model.grid_points(); ++p)
      if (std::abs(data[p * nc + c] - v0) > tol) return false;
  }
  return true;
}

double SymTensorField::max_abs() const { return vec_max_abs(data); }

ScalarField ScalarField::zero(const BoundaryModel& m) {
  ScalarField f;
  f.model = m;
  f.rep = m.is_grid() ? Rep::Grid : Rep::HomBlocks;
  f.data.assign(m.is_grid() ? m.grid_points() : 1, 0.0);
  return f;
}

ScalarField ScalarField::constant(const BoundaryModel& m, double v) {
  ScalarField f = zero(m);
  std::fill(f.data.begin(), f.data.end(), v);
  return f;
}

double ScalarField::max_abs() const { return vec_max_abs(data); }

VectorField VectorField::zero(const BoundaryModel& m) {
  VectorField f;
  f.model = m;
  if (m.is_grid()) {
    f.rep = Rep::Grid;
    f.data.assign(m.grid_points() * m.n, 0.0);
  } else {
    f.rep = Rep::HomBlocks;
    f.data.assign(m.kind == ModelKind::CircleSphere ? 1 : 0, 0.0);
  }
  return f;
}

VectorField VectorField::coordinate_axis(const BoundaryModel& torus, int axis, double c) {
  if (!torus.is_grid()) reject("bad-representation", "coordinate_axis needs a torus model");
  VectorField f = zero(torus);
  for (std::size_t p = 0; p < torus.grid_points(); ++p) f.at(p, axis) = c;
  return f;
}

VectorField VectorField::circle_rotation(const BoundaryModel& product, double c) {
  if (product.kind != ModelKind::CircleSphere)
    reject("bad-representation", "circle_rotation needs a CircleSphere model");
  VectorField f = zero(product);
  f.data[0] = c;
  return f;
}

OneFormField OneFormField::zero(const BoundaryModel& m) {
  OneFormField f;
  f.model = m;
  if (m.is_grid()) {
    f.rep = Rep::Grid;
    f.data.assign(m.grid_points() * m.n, 0.0);
  } else {
    f.rep = Rep::HomBlocks;
    f.data.assign(m.kind == ModelKind::CircleSphere ? 1 : 0, 0.0);
  }
  return f;
}

double OneFormField::max_abs() const { return vec_max_abs(data); }

}  // namespace fglab
