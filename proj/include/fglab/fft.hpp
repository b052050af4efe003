#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "fglab/model.hpp"

namespace fglab {

// Fourier-spectral differentiation on the uniform torus grid. One full n-D
// complex transform per call; plans are cached per resolution. Thread-safe.
class SpectralEngine {
 public:
  explicit SpectralEngine(const BoundaryModel& torus);
  ~SpectralEngine();
  SpectralEngine(const SpectralEngine&) = delete;
  SpectralEngine& operator=(const SpectralEngine&) = delete;

  // d f / d θ_axis of a scalar grid field
  std::vector<double> derivative(const std::vector<double>& f, int axis) const;

  std::vector<std::complex<double>> forward(const std::vector<double>& f) const;
  std::vector<double> backward_real(const std::vector<std::complex<double>>& F) const;
  // wavenumber along `axis` at flattened grid index p (Nyquist mapped to 0)
  double wave(int axis, std::size_t p) const;

  static std::shared_ptr<SpectralEngine> get(const BoundaryModel& torus);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace fglab
