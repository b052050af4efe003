#pragma once

#include <functional>
#include <vector>

#include "fglab/fields.hpp"

namespace fglab {

// boundary Cauchy data (γ, τ_(n)); τ_(n) = g_(n) in the n-odd regime
struct ConstraintPair {
  SymTensorField gamma;
  SymTensorField tau_n;
};

struct MembershipReport {
  double divergence_residual = 0.0;  // ‖δ_γ τ‖ / (1 + ‖τ‖)
  double trace_residual = 0.0;       // ‖tr_γ τ‖ / (1 + ‖τ‖)
  bool advisory = false;             // n even: divergence statement only
};

MembershipReport check_membership(const ConstraintPair& pair);

// f(θ¹) · ( −(n−2)(dθ²)² + (dθ³)² + ⋯ + (dθⁿ)² ) on the flat torus
SymTensorField example53(int n, const std::function<double(double)>& f,
                         const BoundaryModel& torus);

struct IdentityReport {
  double lhs = 0.0;       // ∫⟨L_X τ, h⟩ dV
  double rhs = 0.0;       // −2 ∫⟨δ'τ, X⟩ dV
  double residual = 0.0;  // |lhs − rhs| / (1 + |lhs|)
  double richardson_discrepancy = 0.0;
};

struct IdentityOptions {
  double killing_tol = 1e-10;  // ‖δ*X‖ gate, γ-norm
  double divfree_tol = 1e-8;   // ‖δτ‖ gate
};

// both sides of the Killing-field integral identity, computed independently
IdentityReport verify_identity_5_9(const SymTensorField& gamma, const VectorField& X,
                                   const SymTensorField& tau, const SymTensorField& h,
                                   const IdentityOptions& opts = {});

// hard-coded Killing bases: the n coordinate translations on the flat torus,
// the circle rotation on CircleSphere. Empty otherwise.
std::vector<VectorField> killing_basis(const BoundaryModel& m);

// components ∫⟨δ'τ (direction h), X_a⟩ over the Killing basis; the zero vector
// iff the linearized divergence constraint is solvable for this h
std::vector<double> obstruction_projection(const SymTensorField& gamma,
                                           const SymTensorField& tau, const SymTensorField& h);

// ‖L_X g_(n)‖_{L²(γ)}; zero certifies the isometry-extension hypothesis
double killing_extension_criterion(const SymTensorField& gamma, const VectorField& X,
                                   const SymTensorField& g_n);

// ∫ δ_{γ+sh}(τ(X)) dV_{γ+sh} — exact divergence, must vanish on the closed
// manifold for every s
double stokes_residual(const SymTensorField& gamma, const SymTensorField& h,
                       const SymTensorField& tau, const VectorField& X, double s);

}  // namespace fglab
