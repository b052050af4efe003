#include "fglab/constraint_lab.hpp"

#include <cmath>

#include "fglab/calculus.hpp"
#include "fglab/errors.hpp"

namespace fglab {

MembershipReport check_membership(const ConstraintPair& pair) {
  require_same_model(pair.gamma.model, pair.tau_n.model, "check_membership");
  MembershipReport rep;
  const double scale = 1.0 + l2_norm(pair.gamma, pair.tau_n);
  rep.divergence_residual = l2_norm(pair.gamma, divergence(pair.gamma, pair.tau_n)) / scale;
  if (pair.gamma.model.n % 2 == 0) {
    rep.advisory = true;  // r_(n), a_(n) not implemented for n even
  }
  rep.trace_residual = l2_norm(pair.gamma, trace(pair.gamma, pair.tau_n)) / scale;
  return rep;
}

SymTensorField example53(int n, const std::function<double(double)>& f,
                         const BoundaryModel& torus) {
  if (torus.kind != ModelKind::FlatTorus || torus.n != n)
    reject("bad-model", "example53 needs the flat torus of matching dimension");
  SymTensorField out = SymTensorField::zero(torus);
  for (std::size_t p = 0; p < torus.grid_points(); ++p) {
    const double fv = f(torus.coordinate(p, 0));
    out.at(p, 1, 1) = -(n - 2.0) * fv;
    for (int i = 2; i < n; ++i) out.at(p, i, i) = fv;
  }
  return out;
}

IdentityReport verify_identity_5_9(const SymTensorField& gamma, const VectorField& X,
                                   const SymTensorField& tau, const SymTensorField& h,
                                   const IdentityOptions& opts) {
  const double gscale = 1.0 + l2_norm(gamma, gamma);
  if (l2_norm(gamma, killing_operator(gamma, X)) > opts.killing_tol * gscale)
    reject("not-killing", "X is not a Killing field of gamma");
  if (l2_norm(gamma, divergence(gamma, tau)) >
      opts.divfree_tol * (1.0 + l2_norm(gamma, tau)))
    reject("not-divergence-free", "tau is not divergence-free");
  IdentityReport rep;
  rep.lhs = l2_pair(gamma, lie_derivative(X, tau), h);
  const LinearizedDivergence dp = divergence_linearized_checked(gamma, h, tau);
  rep.rhs = -2.0 * pair_form_vector(gamma, dp.value, X);
  rep.richardson_discrepancy = dp.richardson_discrepancy;
  rep.residual = std::abs(rep.lhs - rep.rhs) / (1.0 + std::abs(rep.lhs));
  return rep;
}

std::vector<VectorField> killing_basis(const BoundaryModel& m) {
  std::vector<VectorField> basis;
  if (m.kind == ModelKind::FlatTorus) {
    for (int a = 0; a < m.n; ++a) basis.push_back(VectorField::coordinate_axis(m, a));
  } else if (m.kind == ModelKind::CircleSphere) {
    basis.push_back(VectorField::circle_rotation(m));
  }
  return basis;
}

std::vector<double> obstruction_projection(const SymTensorField& gamma,
                                           const SymTensorField& tau,
                                           const SymTensorField& h) {
  const auto basis = killing_basis(gamma.model);
  if (basis.empty())
    reject("no-killing-basis", "model has no enumerable invariant Killing basis");
  const LinearizedDivergence dp = divergence_linearized_checked(gamma, h, tau);
  std::vector<double> comps;
  comps.reserve(basis.size());
  for (const auto& X : basis) comps.push_back(pair_form_vector(gamma, dp.value, X));
  return comps;
}

double killing_extension_criterion(const SymTensorField& gamma, const VectorField& X,
                                   const SymTensorField& g_n) {
  const double gscale = 1.0 + l2_norm(gamma, gamma);
  if (l2_norm(gamma, killing_operator(gamma, X)) > 1e-10 * gscale)
    reject("not-killing", "X is not a Killing field of gamma");
  return l2_norm(gamma, lie_derivative(X, g_n));
}

double stokes_residual(const SymTensorField& gamma, const SymTensorField& h,
                       const SymTensorField& tau, const VectorField& X, double s) {
  SymTensorField gs = gamma;
  for (std::size_t i = 0; i < gs.data.size(); ++i) gs.data[i] += s * h.data[i];
  return total_divergence_of_contraction(gs, tau, X);
}

}  // namespace fglab
