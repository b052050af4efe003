#include "fglab/random.hpp"

#include <cmath>

#include "fglab/calculus.hpp"

namespace fglab {

namespace {

// smooth periodic scalar: sum of a few cosines with random phase
std::vector<double> random_scalar(const BoundaryModel& m, std::mt19937_64& rng, double amp,
                                  int max_mode) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * 3.14159265358979323846);
  const int nwaves = 4;
  struct Wave {
    std::vector<int> k;
    double a, phi;
  };
  std::vector<Wave> waves;
  std::uniform_int_distribution<int> kdist(-max_mode, max_mode);
  for (int w = 0; w < nwaves; ++w) {
    Wave wv;
    wv.k.resize(m.n);
    bool nonzero = false;
    for (int a = 0; a < m.n; ++a) {
      wv.k[a] = kdist(rng);
      nonzero = nonzero || wv.k[a] != 0;
    }
    wv.a = amp * unif(rng) / nwaves;
    wv.phi = phase(rng);
    if (!nonzero) wv.phi = 0.0;  // constant contribution
    waves.push_back(wv);
  }
  std::vector<double> out(m.grid_points(), 0.0);
  for (std::size_t p = 0; p < m.grid_points(); ++p) {
    double v = 0.0;
    for (const auto& wv : waves) {
      double arg = wv.phi;
      for (int a = 0; a < m.n; ++a)
        arg += wv.k[a] * (2.0 * 3.14159265358979323846 / m.periods[a]) * m.coordinate(p, a);
      v += wv.a * std::cos(arg);
    }
    out[p] = v;
  }
  return out;
}

}  // namespace

SymTensorField random_sym_field(const BoundaryModel& m, std::mt19937_64& rng, double amplitude,
                                int max_mode) {
  if (!m.is_grid()) {
    std::uniform_real_distribution<double> unif(-amplitude, amplitude);
    std::vector<double> blocks(m.block_count());
    for (auto& b : blocks) b = unif(rng);
    return SymTensorField::from_blocks(m, blocks);
  }
  SymTensorField out = SymTensorField::zero(m);
  const std::size_t nc = m.sym_components();
  for (int i = 0; i < m.n; ++i)
    for (int j = i; j < m.n; ++j) {
      auto comp = random_scalar(m, rng, amplitude, max_mode);
      for (std::size_t p = 0; p < m.grid_points(); ++p)
        out.data[p * nc + sym_index(i, j, m.n)] = comp[p];
    }
  return out;
}

SymTensorField random_tt_field(const BoundaryModel& m, std::mt19937_64& rng, double amplitude,
                               int max_mode) {
  if (m.kind == ModelKind::RoundSphere) return SymTensorField::zero(m);
  if (m.kind == ModelKind::CircleSphere) {
    // c_c/γ_c + (n-1) c_s/γ_s = 0
    std::uniform_real_distribution<double> unif(-amplitude, amplitude);
    const auto gb = m.metric_blocks();
    const double cs = unif(rng);
    return SymTensorField::from_blocks(m, {-(m.n - 1) * cs * gb[0] / gb[1], cs});
  }
  return tt_project(random_sym_field(m, rng, amplitude, max_mode));
}

}  // namespace fglab
