#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace fglab {

enum class ModelKind { FlatTorus, RoundSphere, CircleSphere };

std::string to_string(ModelKind k);

// Discrete or homogeneous description of the boundary (∂M, γ).
//
// FlatTorus:    coordinates θ^a ∈ [0, period_a) on a uniform grid, γ = identity.
// RoundSphere:  S^n of given radius; invariant fields live in the single block
//               spanned by g_{S^n(1)}.
// CircleSphere: S^1(β) × S^{n-1}(r); blocks spanned by dθ² and g_{S^{n-1}(1)}.
struct BoundaryModel {
  ModelKind kind = ModelKind::FlatTorus;
  int n = 3;

  std::vector<double> periods;    // FlatTorus
  std::vector<int> resolution;    // FlatTorus, per axis, even, >= 8
  double radius = 1.0;            // RoundSphere
  double circle_length = 0.0;     // CircleSphere: β
  double sphere_radius = 1.0;     // CircleSphere: r

  static BoundaryModel flat_torus(int n, std::vector<double> periods,
                                  std::vector<int> resolution);
  static BoundaryModel flat_torus(int n, double period = 0.0, int resolution = 16);
  static BoundaryModel round_sphere(int n, double radius = 1.0);
  static BoundaryModel circle_sphere(int n, double beta, double r = 1.0);

  void validate() const;  // throws Error on invariant violation

  bool operator==(const BoundaryModel&) const = default;

  bool is_grid() const { return kind == ModelKind::FlatTorus; }

  // ---- homogeneous block structure ----
  int block_count() const;                  // 1 (sphere) or 2 (circle, sphere)
  std::vector<double> block_dims() const;   // {n} or {1, n-1}
  std::vector<double> metric_blocks() const;  // γ blocks: {radius²} or {1, r²}
  std::vector<double> ricci_blocks() const;   // Ric(γ) blocks: {n-1} or {0, n-2}

  // ---- grid structure ----
  std::size_t grid_points() const;          // 1 for homogeneous models
  std::size_t sym_components() const { return static_cast<std::size_t>(n) * (n + 1) / 2; }
  // coordinate of grid point `p` along `axis`
  double coordinate(std::size_t p, int axis) const;
  std::size_t stride(int axis) const;

  double volume() const;  // Vol(∂M, γ)
};

// packed symmetric index, i <= j
inline int sym_index(int i, int j, int n) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i - 1) / 2 + (j - i);
}

double unit_sphere_volume(int dim);

}  // namespace fglab
