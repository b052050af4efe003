#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fglab/fields.hpp"

namespace fglab {

// Truncated Fefferman–Graham expansion g_t = Σ_k t^k g_(k), g_(0) = γ.
// Coefficients below the free index n depend only on γ; the prescribed
// transverse-traceless g_(n) is the free Cauchy datum.
struct FGSeries {
  BoundaryModel model;
  int n = 3;   // boundary dimension (free index)
  int K = 0;   // truncation order
  double t_max = 0.5;
  std::vector<SymTensorField> coeffs;  // k = 0..K
  // recorded when n is even and detection was requested: trace-free part of
  // the blocked order-n source and its L²(γ) magnitude
  std::optional<std::pair<SymTensorField, double>> log_obstruction;

  const SymTensorField& gamma() const { return coeffs.front(); }
};

struct ExpandOptions {
  bool allow_log_detection = false;  // n even with K >= n requires opting in
  double tt_tol = 1e-8;              // transverse-traceless acceptance for g_(n), n odd
  double t_max = 0.0;                // 0 -> 1.0 on sphere boundaries, 0.5 otherwise
};

// Order-by-order solution of the radial equation
//   t g̈ − (n−1) ġ − 2 H g − 2 t Ric_{S(t)} + t H ġ − t (ġ)² = 0,
// matching powers of t. The order-2n trace coefficient (where the tangential
// matching degenerates) is taken from the order matching of the Riccati trace
// identity t Ḣ − H = −t |A|².
FGSeries expand(const SymTensorField& gamma, const SymTensorField& g_n, int K,
                const ExpandOptions& opts = {});

// (g_t, ġ_t) by polynomial evaluation
std::pair<SymTensorField, SymTensorField> eval(const FGSeries& s, double t);

// model radial operator t f'' − c f'; indicial roots {0, c+1}
struct RadialOperatorSpec {
  double c = 1.0;
};
std::pair<double, double> indicial_roots(const RadialOperatorSpec& spec);

// L²(γ) magnitude of the trace-free order-n source that blocks a pure-power
// solution (0 when the formal obstruction vanishes); n must be even
double resonance_check(const SymTensorField& gamma, int n_even);

// L²(γ) norm of the radial equation applied to the truncated series at t
// (O(t^{K-1}) for a correctly matched series)
double radial_residual_norm(const FGSeries& s, double t);

}  // namespace fglab
