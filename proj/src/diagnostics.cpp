#include "fglab/diagnostics.hpp"

#include <cmath>

#include "fglab/calculus.hpp"
#include "fglab/constraint_lab.hpp"
#include "fglab/errors.hpp"

namespace fglab {

namespace {
constexpr double kFloor = 1e-13;
}

DecayFit decay_fit(const std::vector<double>& ts, const std::vector<double>& norms,
                   double window_low, double window_high) {
  if (ts.size() != norms.size()) reject("bad-data", "decay_fit: size mismatch");
  if (!(window_low < window_high)) reject("empty-window", "decay_fit: empty window");
  DecayFit fit;
  fit.window_low = window_low;
  fit.window_high = window_high;
  std::vector<double> lt, ln;
  double max_norm = 0.0;
  int in_window = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (ts[i] < window_low || ts[i] > window_high) continue;
    ++in_window;
    if (norms[i] < 0.0) reject("bad-data", "decay_fit: negative norm");
    max_norm = std::max(max_norm, norms[i]);
    if (norms[i] > 0.0) {
      lt.push_back(std::log(ts[i]));
      ln.push_back(std::log(norms[i]));
    }
  }
  if (in_window < 5) reject("empty-window", "decay_fit: fewer than 5 samples in window");
  if (max_norm < kFloor) {
    fit.floor_hit = true;
    return fit;
  }
  const std::size_t N = lt.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < N; ++i) {
    sx += lt[i];
    sy += ln[i];
    sxx += lt[i] * lt[i];
    sxy += lt[i] * ln[i];
    syy += ln[i] * ln[i];
  }
  const double den = N * sxx - sx * sx;
  fit.exponent = (N * sxy - sx * sy) / den;
  const double ss_tot = syy - sy * sy / N;
  const double ss_res = ss_tot - fit.exponent * (sxy - sx * sy / N);
  fit.r_squared = ss_tot > 0.0 ? std::max(0.0, 1.0 - ss_res / ss_tot) : 1.0;
  return fit;
}

UniqueContinuationResult unique_continuation_experiment(const SymTensorField& gamma,
                                                        const SymTensorField& g_nA,
                                                        const SymTensorField& g_nB,
                                                        const UniqueContinuationOptions& opts) {
  ExpandOptions eo;
  eo.t_max = std::max(opts.t1, 1.0);
  FGSeries sA = expand(gamma, g_nA, opts.K, eo);
  FGSeries sB = expand(gamma, g_nB, opts.K, eo);
  MetricCurve cA = evolve(sA, opts.t0, opts.t1, opts.ode_tol);
  MetricCurve cB = evolve(sB, opts.t0, opts.t1, opts.ode_tol);
  const SplitNorms split = difference(cA, cB);
  UniqueContinuationResult res;
  res.trace_free =
      decay_fit(split.t, split.trace_free_norm, opts.window_low, opts.window_high);
  res.trace = decay_fit(split.t, split.trace_norm, opts.trace_window_low,
                        opts.trace_window_high);
  for (std::size_t i = 0; i < split.t.size(); ++i)
    res.max_difference = std::max(
        res.max_difference, std::hypot(split.trace_norm[i], split.trace_free_norm[i]));
  return res;
}

IsometryExtensionResult isometry_extension_experiment(const SymTensorField& gamma,
                                                      const VectorField& X,
                                                      const SymTensorField& g_n,
                                                      const IsometryExtensionOptions& opts) {
  IsometryExtensionResult res;
  res.criterion_norm = killing_extension_criterion(gamma, X, g_n);  // checks X Killing
  const FGSeries series = expand(gamma, g_n, opts.K);
  const double scale = 1.0 + g_n.max_abs() + gamma.max_abs();
  for (int k = 1; k <= opts.K; ++k) {
    const double nrm = l2_norm(gamma, lie_derivative(X, series.coeffs[k]));
    res.series_residual_orders.emplace_back(k, nrm);
    if (res.leading_order < 0 && nrm > kFloor * scale) res.leading_order = k;
  }
  // radial extension with [X, N] = 0: X is t-independent, so the witness is
  // ‖L_X g_t‖ evaluated on series slices
  const int n = gamma.model.n;
  for (int i = 0; i < opts.samples; ++i) {
    const double t =
        opts.t_low * std::pow(opts.t_high / opts.t_low, i / (opts.samples - 1.0));
    auto [gt, gdt] = eval(series, t);
    res.witness_ts.push_back(t);
    res.witness_norms.push_back(l2_norm(gamma, lie_derivative(X, gt)) / std::pow(t, n));
  }
  res.floored = true;
  for (double w : res.witness_norms) res.floored = res.floored && w < kFloor * scale;
  return res;
}

}  // namespace fglab
