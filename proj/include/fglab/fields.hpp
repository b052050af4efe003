#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fglab/model.hpp"

namespace fglab {

enum class Rep { Grid, HomBlocks };

namespace detail {
template <class F>
F field_binary(const F& a, const F& b, double sb) {
  F out = a;
  for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] += sb * b.data[i];
  return out;
}
}  // namespace detail

// Symmetric 2-tensor on a boundary model. Grid representation stores packed
// coordinate components over the torus grid; HomBlocks stores one coefficient
// per invariant block (sphere; circle + sphere).
struct SymTensorField {
  BoundaryModel model;
  Rep rep = Rep::HomBlocks;
  std::vector<double> data;

  static SymTensorField zero(const BoundaryModel& m);
  static SymTensorField from_blocks(const BoundaryModel& m, std::vector<double> blocks);
  // spatially constant grid field from a symmetric matrix
  static SymTensorField constant(const BoundaryModel& torus, const Eigen::MatrixXd& value);

  double& at(std::size_t p, int i, int j) {
    return data[p * model.sym_components() + sym_index(i, j, model.n)];
  }
  double at(std::size_t p, int i, int j) const {
    return data[p * model.sym_components() + sym_index(i, j, model.n)];
  }
  Eigen::MatrixXd matrix_at(std::size_t p) const;
  void set_matrix(std::size_t p, const Eigen::MatrixXd& v);

  bool spatially_constant(double tol = 0.0) const;
  double max_abs() const;

  SymTensorField operator+(const SymTensorField& o) const { return detail::field_binary(*this, o, 1.0); }
  SymTensorField operator-(const SymTensorField& o) const { return detail::field_binary(*this, o, -1.0); }
  SymTensorField& operator*=(double s) {
    for (double& v : data) v *= s;
    return *this;
  }
  friend SymTensorField operator*(double s, SymTensorField f) { return f *= s; }
};

struct ScalarField {
  BoundaryModel model;
  Rep rep = Rep::HomBlocks;
  std::vector<double> data;  // grid: per point; hom: single value

  static ScalarField zero(const BoundaryModel& m);
  static ScalarField constant(const BoundaryModel& m, double v);
  double max_abs() const;
  ScalarField operator+(const ScalarField& o) const { return detail::field_binary(*this, o, 1.0); }
  ScalarField operator-(const ScalarField& o) const { return detail::field_binary(*this, o, -1.0); }
};

// Vector field X^a. HomBlocks: one coefficient (circle rotation) on
// CircleSphere; no invariant directions on RoundSphere (empty data, always 0).
struct VectorField {
  BoundaryModel model;
  Rep rep = Rep::HomBlocks;
  std::vector<double> data;

  static VectorField zero(const BoundaryModel& m);
  // torus coordinate field c * ∂_axis
  static VectorField coordinate_axis(const BoundaryModel& torus, int axis, double c = 1.0);
  static VectorField circle_rotation(const BoundaryModel& product, double c = 1.0);

  double& at(std::size_t p, int a) { return data[p * model.n + a]; }
  double at(std::size_t p, int a) const { return data[p * model.n + a]; }
  VectorField operator+(const VectorField& o) const { return detail::field_binary(*this, o, 1.0); }
};

struct OneFormField {
  BoundaryModel model;
  Rep rep = Rep::HomBlocks;
  std::vector<double> data;

  static OneFormField zero(const BoundaryModel& m);
  double& at(std::size_t p, int a) { return data[p * model.n + a]; }
  double at(std::size_t p, int a) const { return data[p * model.n + a]; }
  double max_abs() const;
  OneFormField operator-(const OneFormField& o) const { return detail::field_binary(*this, o, -1.0); }
  OneFormField& operator*=(double s) {
    for (double& v : data) v *= s;
    return *this;
  }
};

void require_same_model(const BoundaryModel& a, const BoundaryModel& b, const char* where);

}  // namespace fglab
