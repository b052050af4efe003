#pragma once

#include <map>
#include <optional>
#include <string>

#include "fglab/model.hpp"

namespace fglab {

// Reproducible run configuration. Loaded from a key-value file with dotted
// nesting (model.kind = CircleSphere); command-line flags override file values.
struct RunConfig {
  std::string command;
  // model
  std::string model_kind = "RoundSphere";
  int n = 3;
  double period = 0.0;      // torus (0 -> 2π)
  int resolution = 16;      // torus, per axis
  double radius = 1.0;      // sphere
  double beta = 3.141592653589793;  // circle length
  double sphere_radius = 1.0;
  // physics / data
  double mass = 1.0;
  double g_n_scale = 0.0;  // TT block scale for CircleSphere data
  std::string f_name = "sin";  // torus example profile f(θ¹)
  // numerics
  double ode_tol = 1e-10;
  double fit_tol = 1e-5;
  double identity_tol = 1e-6;
  int K = 8;
  double t0 = 0.01, t1 = 0.5;
  double window_low = 0.01, window_high = 0.1;
  unsigned long long seed = 20240811ull;
  // output
  std::string out_dir;  // from FGLAB_OUTPUT_DIR when empty
  std::string preset;

  void validate_for(int model_n) const;
  BoundaryModel make_model() const;
  std::map<std::string, std::string> as_map() const;
  std::string canonical_text() const;  // sorted key=value lines
  std::string hash() const;            // fnv1a64 of the canonical text
};

// parse `key = value` lines; '#' comments; dotted keys
std::map<std::string, std::string> parse_config_file(const std::string& path);
void apply_config_map(RunConfig& cfg, const std::map<std::string, std::string>& kv);

}  // namespace fglab
