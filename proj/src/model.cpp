#include "fglab/model.hpp"

#include <cmath>
#include <numbers>

#include "fglab/errors.hpp"

namespace fglab {

std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::FlatTorus: return "FlatTorus";
    case ModelKind::RoundSphere: return "RoundSphere";
    case ModelKind::CircleSphere: return "CircleSphere";
  }
  return "?";
}

BoundaryModel BoundaryModel::flat_torus(int n, std::vector<double> periods,
                                        std::vector<int> resolution) {
  BoundaryModel m;
  m.kind = ModelKind::FlatTorus;
  m.n = n;
  m.periods = std::move(periods);
  m.resolution = std::move(resolution);
  m.validate();
  return m;
}

BoundaryModel BoundaryModel::flat_torus(int n, double period, int resolution) {
  if (period <= 0.0) period = 2.0 * std::numbers::pi;
  return flat_torus(n, std::vector<double>(n, period), std::vector<int>(n, resolution));
}

BoundaryModel BoundaryModel::round_sphere(int n, double radius) {
  BoundaryModel m;
  m.kind = ModelKind::RoundSphere;
  m.n = n;
  m.radius = radius;
  m.validate();
  return m;
}

BoundaryModel BoundaryModel::circle_sphere(int n, double beta, double r) {
  BoundaryModel m;
  m.kind = ModelKind::CircleSphere;
  m.n = n;
  m.circle_length = beta;
  m.sphere_radius = r;
  m.validate();
  return m;
}

void BoundaryModel::validate() const {
  if (n < 3 || n > 7) reject("bad-dimension", "boundary dimension must satisfy 3 <= n <= 7");
  switch (kind) {
    case ModelKind::FlatTorus: {
      if (static_cast<int>(periods.size()) != n || static_cast<int>(resolution.size()) != n)
        reject("bad-model", "torus needs n periods and n resolutions");
      for (double p : periods)
        if (!(p > 0.0)) reject("bad-model", "torus periods must be positive");
      for (int r : resolution)
        if (r < 8 || r % 2 != 0) reject("bad-model", "grid resolutions must be even and >= 8");
      break;
    }
    case ModelKind::RoundSphere:
      if (!(radius > 0.0)) reject("bad-model", "sphere radius must be positive");
      break;
    case ModelKind::CircleSphere:
      if (!(circle_length > 0.0) || !(sphere_radius > 0.0))
        reject("bad-model", "circle length and sphere radius must be positive");
      break;
  }
}

int BoundaryModel::block_count() const {
  switch (kind) {
    case ModelKind::RoundSphere: return 1;
    case ModelKind::CircleSphere: return 2;
    default: return 0;
  }
}

std::vector<double> BoundaryModel::block_dims() const {
  switch (kind) {
    case ModelKind::RoundSphere: return {static_cast<double>(n)};
    case ModelKind::CircleSphere: return {1.0, static_cast<double>(n - 1)};
    default: return {};
  }
}

std::vector<double> BoundaryModel::metric_blocks() const {
  switch (kind) {
    case ModelKind::RoundSphere: return {radius * radius};
    case ModelKind::CircleSphere: return {1.0, sphere_radius * sphere_radius};
    default: return {};
  }
}

std::vector<double> BoundaryModel::ricci_blocks() const {
  // Ricci of the unit-basis blocks: Ric(S^m(any scale)) = (m-1) g_{S^m(1)}.
  switch (kind) {
    case ModelKind::RoundSphere: return {static_cast<double>(n - 1)};
    case ModelKind::CircleSphere: return {0.0, static_cast<double>(n - 2)};
    default: return {};
  }
}

std::size_t BoundaryModel::grid_points() const {
  if (kind != ModelKind::FlatTorus) return 1;
  std::size_t p = 1;
  for (int r : resolution) p *= static_cast<std::size_t>(r);
  return p;
}

std::size_t BoundaryModel::stride(int axis) const {
  // row-major: last axis fastest
  std::size_t s = 1;
  for (int a = n - 1; a > axis; --a) s *= static_cast<std::size_t>(resolution[a]);
  return s;
}

double BoundaryModel::coordinate(std::size_t p, int axis) const {
  const std::size_t idx = (p / stride(axis)) % static_cast<std::size_t>(resolution[axis]);
  return static_cast<double>(idx) * periods[axis] / resolution[axis];
}

double unit_sphere_volume(int dim) {
  // Vol(S^dim(1)) = 2 π^{(dim+1)/2} / Γ((dim+1)/2)
  return 2.0 * std::pow(std::numbers::pi, 0.5 * (dim + 1)) / std::tgamma(0.5 * (dim + 1));
}

double BoundaryModel::volume() const {
  switch (kind) {
    case ModelKind::FlatTorus: {
      double v = 1.0;
      for (double p : periods) v *= p;
      return v;
    }
    case ModelKind::RoundSphere:
      return std::pow(radius, n) * unit_sphere_volume(n);
    case ModelKind::CircleSphere:
      return circle_length * std::pow(sphere_radius, n - 1) * unit_sphere_volume(n - 1);
  }
  return 0.0;
}

}  // namespace fglab
