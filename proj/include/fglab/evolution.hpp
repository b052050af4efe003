#pragma once

#include <string>
#include <vector>

#include "fglab/series.hpp"

namespace fglab {

enum class CurveStatus { Ok, LostPositivity };

// Sampled radial curve t ↦ g_t with first derivatives, in the compactified
// geodesic gauge ḡ = dt² + g_t.
struct MetricCurve {
  BoundaryModel model;
  std::vector<double> t_grid;
  std::vector<SymTensorField> values;
  std::vector<SymTensorField> derivs;
  std::string gauge_tag = "geodesic-compactified";
  CurveStatus status = CurveStatus::Ok;
  double failure_t = 0.0;  // t where positive-definiteness was lost
};

struct EvolveOptions {
  std::vector<double> sample_ts;  // custom output grid (must lie in [t0, t1])
  int samples = 0;                // uniform sample count; 0 -> span-based default
  double internal_safety = 1e-4;  // per-step tolerance = tol * internal_safety
};

// Integrate the radial evolution from the series seed (g, ġ)(t0) = eval(seed, t0)
// with an adaptive embedded Runge-Kutta (7(8) tableau). Cohomogeneity-one
// reductions only: block coefficients, or spatially constant torus data.
// Positive-definiteness is monitored; losing it truncates the curve and is
// reported through `status`, not an exception.
MetricCurve evolve(const FGSeries& seed, double t0, double t1, double tol,
                   const EvolveOptions& opts = {});

// same integration from explicit Cauchy data at t0 (used for re-seeding)
MetricCurve evolve_from_state(const SymTensorField& g0, const SymTensorField& gd0, double t0,
                              double t1, double tol, const EvolveOptions& opts = {});

struct ConstraintRecord {
  double t = 0.0;
  double divergence = 0.0;      // ‖δ_{g_t}(A − H g_t)‖, Gauss–Codazzi
  double hamiltonian = 0.0;     // scalar constraint of the physical metric
  double riccati_trace = 0.0;   // |t Ḣ − H + t |A|²|, Ḣ by divided differences
};

struct ConstraintReport {
  std::vector<ConstraintRecord> records;
  double max_divergence = 0.0, max_hamiltonian = 0.0, max_riccati_trace = 0.0;
};

ConstraintReport constraint_residuals(const MetricCurve& curve);

// per-t γ-orthogonal split of b − a into trace and trace-free parts (γ = g_(0))
struct SplitNorms {
  std::vector<double> t;
  std::vector<double> trace_norm;
  std::vector<double> trace_free_norm;
};
SplitNorms difference(const MetricCurve& a, const MetricCurve& b);

// ‖F(g)(t_i)‖_{L²(γ)} of the radial equation along the curve, with g̈ from
// divided differences of the stored ġ — the recompactified Einstein gauge check
double radial_equation_residual(const MetricCurve& curve, std::size_t index);

}  // namespace fglab
