#pragma once

#include "fglab/evolution.hpp"

namespace fglab {

// least-squares slope of log‖·‖ against log t over a window
struct DecayFit {
  double exponent = 0.0;
  double r_squared = 0.0;
  double window_low = 0.0, window_high = 0.0;
  bool floor_hit = false;  // data below the numerical floor 1e-13
};

DecayFit decay_fit(const std::vector<double>& ts, const std::vector<double>& norms,
                   double window_low, double window_high);

struct UniqueContinuationOptions {
  int K = 10;
  double t0 = 0.01, t1 = 0.6;
  double ode_tol = 1e-11;
  double window_low = 0.01, window_high = 0.1;        // trace-free fit window
  double trace_window_low = 0.1, trace_window_high = 0.55;
};

struct UniqueContinuationResult {
  DecayFit trace_free;
  DecayFit trace;
  double max_difference = 0.0;  // max over t of ‖g_B − g_A‖
};

// evolve both data sets, split the difference, fit decay orders per part
UniqueContinuationResult unique_continuation_experiment(const SymTensorField& gamma,
                                                        const SymTensorField& g_nA,
                                                        const SymTensorField& g_nB,
                                                        const UniqueContinuationOptions& opts = {});

struct IsometryExtensionOptions {
  int K = 8;
  double t_low = 1e-2, t_high = 0.5;
  int samples = 40;
};

struct IsometryExtensionResult {
  double criterion_norm = 0.0;  // ‖L_X g_(n)‖
  // per-order series witness ‖L_X g_(k)‖, k = 1..K
  std::vector<std::pair<int, double>> series_residual_orders;
  int leading_order = -1;  // first k with nonzero witness; -1 when at floor
  std::vector<double> witness_ts;
  std::vector<double> witness_norms;  // ‖L_X g_t‖ / t^n along the series curve
  bool floored = false;
};

// Prop-5.1 experiment: when the criterion vanishes the radial extension with
// [X, N] = 0 keeps ‖L_X g_t‖ at floor; otherwise the leading residual order is n.
IsometryExtensionResult isometry_extension_experiment(const SymTensorField& gamma,
                                                      const VectorField& X,
                                                      const SymTensorField& g_n,
                                                      const IsometryExtensionOptions& opts = {});

}  // namespace fglab
