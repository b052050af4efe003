#pragma once

#include <random>

#include "fglab/fields.hpp"

namespace fglab {

// Band-limited smooth random fields (deterministic given the engine state).
// Torus fields are sums of low-frequency Fourier modes (|k_a| <= max_mode);
// homogeneous fields are random block coefficients.
SymTensorField random_sym_field(const BoundaryModel& m, std::mt19937_64& rng,
                                double amplitude = 1.0, int max_mode = 2);

// transverse-traceless w.r.t. the model metric (spectral projection on the
// torus; traceless block combination on CircleSphere; 0 on RoundSphere)
SymTensorField random_tt_field(const BoundaryModel& m, std::mt19937_64& rng,
                               double amplitude = 1.0, int max_mode = 2);

}  // namespace fglab
