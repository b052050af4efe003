#pragma once

#include "fglab/evolution.hpp"

namespace fglab {

// g_t = (1 − t²/(4 a²))² · a² g_{S^n(1)} on (0, 2a): the ball metric in the
// compactified geodesic gauge with round boundary of radius a
MetricCurve poincare_curve(int n, const std::vector<double>& t_grid, double radius = 1.0);

// compactified hyperbolic cone/cusp curve g_t ≡ γ
MetricCurve cone_metric_curve(const SymTensorField& gamma, const std::vector<double>& t_grid);

// ---- AdS-Schwarzschild family: V(r) = 1 + r² − 2m / r^{n-2} ----

struct SchwarzschildParams {
  int n = 3;
  double m = 1.0;       // mass
  double r_plus = 1.0;  // largest root of V
  double beta = 0.0;    // smooth circle period 4π r₊ / (n r₊² + (n−2))
};

double schwarzschild_V(int n, double m, double r);
// largest (only) positive root of V, relative accuracy 1e-12
double schwarzschild_rplus(int n, double m);
double schwarzschild_beta(int n, double r_plus);
SchwarzschildParams make_schwarzschild(int n, double m);

struct BetaMaxResult {
  double r_plus_star = 0.0;       // closed-form stationary point √((n−2)/n)
  double beta_max = 0.0;          // golden-section maximum of β(r₊)
  double stationary_value = 0.0;  // 2π/√(n(n−2)) — β at the stationary point
  double printed_formula = 0.0;   // 2π√((n−2)/n); equals the others only at n = 3
};
BetaMaxResult schwarzschild_beta_max(int n);

// geodesic-gauge defining function: t(r) = exp(∫_r^∞ (1/√V − 1/ρ) dρ) / r,
// normalized so t·r → 1 at infinity; t is decreasing with finite limit t₊ at
// the horizon r₊
double schwarzschild_t_of_r(const SchwarzschildParams& p, double r);
double schwarzschild_r_of_t(const SchwarzschildParams& p, double t);
double schwarzschild_t_plus(const SchwarzschildParams& p);

// compactified curve g_t = t² (V dθ² + r(t)² g_{S^{n-1}}) on CircleSphere(n, β, 1)
MetricCurve schwarzschild_fg_curve(const SchwarzschildParams& p,
                                   const std::vector<double>& t_grid);

// least-squares fit of (g_t − Σ_{j<k} t^j g_(j)) / t^k over a window, with a
// window-halving stability check
struct ExtractOptions {
  double window_low = 0.01, window_high = 0.12;
  int degree = 6;
  double stability_tol = 1e-5;
};
SymTensorField extract_coefficient(const MetricCurve& curve, const FGSeries& series, int k,
                                   const ExtractOptions& opts = {});

}  // namespace fglab
