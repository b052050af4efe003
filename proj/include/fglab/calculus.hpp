#pragma once

#include "fglab/fields.hpp"

namespace fglab {

// γ of the model: identity components on the flat torus, block coefficients
// (radius², and 1 / r²) on the homogeneous models.
SymTensorField metric_of(const BoundaryModel& m);

// pointwise γ-trace γ^{ij} τ_{ij}
ScalarField trace(const SymTensorField& gamma, const SymTensorField& tau);

// (δ_γ τ)_k = -∇^j τ_{jk}  (formal L²-adjoint of killing_operator)
OneFormField divergence(const SymTensorField& gamma, const SymTensorField& tau);

// δ*X = ½ L_X γ, the symmetrized covariant derivative of X♭
SymTensorField killing_operator(const SymTensorField& gamma, const VectorField& X);

// coordinate Lie derivative of a symmetric 2-tensor
SymTensorField lie_derivative(const VectorField& X, const SymTensorField& tau);

// ∫ ⟨τ, σ⟩_γ dV_γ
double l2_pair(const SymTensorField& gamma, const SymTensorField& tau, const SymTensorField& sigma);

// ∫ ω(X) dV_γ  (natural pairing, γ enters through the volume form)
double pair_form_vector(const SymTensorField& gamma, const OneFormField& omega, const VectorField& X);

// δ'τ[h] = d/ds δ_{γ+sh} τ |_{s=0}, central differences in s with Richardson
// extrapolation. Throws when the Richardson consistency check fails.
struct LinearizedDivergence {
  OneFormField value;
  double richardson_discrepancy = 0.0;  // ‖D(ε/2) − D(ε)‖_∞
  double step = 0.0;
};
LinearizedDivergence divergence_linearized_checked(const SymTensorField& gamma,
                                                   const SymTensorField& h,
                                                   const SymTensorField& tau,
                                                   double eps = 0.0,        // 0 → 1e-5 · metric scale
                                                   double check_tol = 1e-3);
OneFormField divergence_linearized(const SymTensorField& gamma, const SymTensorField& h,
                                   const SymTensorField& tau);

// L²(γ) norms
double l2_norm(const SymTensorField& gamma, const SymTensorField& tau);
double l2_norm(const SymTensorField& gamma, const OneFormField& omega);
double l2_norm(const SymTensorField& gamma, const ScalarField& f);

// intrinsic curvature of a (possibly curved, torus-grid) slice metric
SymTensorField ricci_tensor(const SymTensorField& metric);
ScalarField scalar_curvature(const SymTensorField& metric);

// spectral transverse-traceless projection w.r.t. the flat torus metric
SymTensorField tt_project(const SymTensorField& tau);

// ∫ δ_γ(τ(X)) dV_γ — an exact divergence; vanishes by Stokes on the closed
// torus (used as a quadrature/identity check)
double total_divergence_of_contraction(const SymTensorField& gamma, const SymTensorField& tau,
                                       const VectorField& X);

}  // namespace fglab
