#include "fglab/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>

#include "fglab/errors.hpp"

namespace fglab {

struct SpectralEngine::Impl {
  BoundaryModel model;
  std::size_t npts = 0;
  fftw_plan forward = nullptr, backward = nullptr;
  fftw_complex* buf = nullptr;
  mutable std::mutex mtx;
  // wavenumbers per axis (Nyquist zeroed for odd-order derivatives)
  std::vector<std::vector<double>> waves;

  explicit Impl(const BoundaryModel& m) : model(m) {
    npts = m.grid_points();
    buf = fftw_alloc_complex(npts);
    std::vector<int> dims(m.resolution.begin(), m.resolution.end());
    {
      static std::mutex plan_mtx;  // fftw planner is not thread-safe
      std::lock_guard lk(plan_mtx);
      forward = fftw_plan_dft(m.n, dims.data(), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
      backward = fftw_plan_dft(m.n, dims.data(), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    waves.resize(m.n);
    for (int a = 0; a < m.n; ++a) {
      const int N = m.resolution[a];
      waves[a].resize(N);
      for (int k = 0; k < N; ++k) {
        int kk = (k <= N / 2) ? k : k - N;
        if (k == N / 2) kk = 0;  // Nyquist: no odd-derivative contribution
        waves[a][k] = 2.0 * std::numbers::pi / m.periods[a] * kk;
      }
    }
  }

  ~Impl() {
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
    fftw_free(buf);
  }
};

SpectralEngine::SpectralEngine(const BoundaryModel& torus) : impl_(std::make_unique<Impl>(torus)) {
  if (!torus.is_grid()) reject("bad-representation", "SpectralEngine needs a torus model");
}

SpectralEngine::~SpectralEngine() = default;

std::vector<double> SpectralEngine::derivative(const std::vector<double>& f, int axis) const {
  auto& I = *impl_;
  if (f.size() != I.npts) reject("bad-representation", "field size does not match grid");
  std::lock_guard lk(I.mtx);
  for (std::size_t p = 0; p < I.npts; ++p) {
    I.buf[p][0] = f[p];
    I.buf[p][1] = 0.0;
  }
  fftw_execute(I.forward);
  const std::size_t stride = I.model.stride(axis);
  const std::size_t N = static_cast<std::size_t>(I.model.resolution[axis]);
  for (std::size_t p = 0; p < I.npts; ++p) {
    const double k = I.waves[axis][(p / stride) % N];
    const double re = I.buf[p][0], im = I.buf[p][1];
    I.buf[p][0] = -k * im;  // multiply by i k
    I.buf[p][1] = k * re;
  }
  fftw_execute(I.backward);
  std::vector<double> out(I.npts);
  const double inv = 1.0 / static_cast<double>(I.npts);
  for (std::size_t p = 0; p < I.npts; ++p) out[p] = I.buf[p][0] * inv;
  return out;
}

std::vector<std::complex<double>> SpectralEngine::forward(const std::vector<double>& f) const {
  auto& I = *impl_;
  std::lock_guard lk(I.mtx);
  for (std::size_t p = 0; p < I.npts; ++p) {
    I.buf[p][0] = f[p];
    I.buf[p][1] = 0.0;
  }
  fftw_execute(I.forward);
  std::vector<std::complex<double>> out(I.npts);
  for (std::size_t p = 0; p < I.npts; ++p) out[p] = {I.buf[p][0], I.buf[p][1]};
  return out;
}

std::vector<double> SpectralEngine::backward_real(const std::vector<std::complex<double>>& F) const {
  auto& I = *impl_;
  std::lock_guard lk(I.mtx);
  for (std::size_t p = 0; p < I.npts; ++p) {
    I.buf[p][0] = F[p].real();
    I.buf[p][1] = F[p].imag();
  }
  fftw_execute(I.backward);
  std::vector<double> out(I.npts);
  const double inv = 1.0 / static_cast<double>(I.npts);
  for (std::size_t p = 0; p < I.npts; ++p) out[p] = I.buf[p][0] * inv;
  return out;
}

double SpectralEngine::wave(int axis, std::size_t p) const {
  auto& I = *impl_;
  const std::size_t stride = I.model.stride(axis);
  const std::size_t N = static_cast<std::size_t>(I.model.resolution[axis]);
  return I.waves[axis][(p / stride) % N];
}

std::shared_ptr<SpectralEngine> SpectralEngine::get(const BoundaryModel& torus) {
  static std::mutex mtx;
  static std::map<std::pair<std::vector<int>, std::vector<double>>,
                  std::weak_ptr<SpectralEngine>>
      cache;
  std::lock_guard lk(mtx);
  auto key = std::make_pair(torus.resolution, torus.periods);
  if (auto sp = cache[key].lock()) return sp;
  auto sp = std::make_shared<SpectralEngine>(torus);
  cache[key] = sp;
  return sp;
}

}  // namespace fglab
