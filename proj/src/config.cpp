#include "fglab/config.hpp"

#include <fstream>
#include <sstream>

#include "fglab/errors.hpp"
#include "fglab/io.hpp"

namespace fglab {

void RunConfig::validate_for(int model_n) const {
  if (!(ode_tol > 0.0) || !(fit_tol > 0.0) || !(identity_tol > 0.0))
    reject("bad-tolerance", "tolerances must be positive");
  if (K < model_n + 2) reject("bad-order", "series order must satisfy K >= n + 2");
}

BoundaryModel RunConfig::make_model() const {
  if (model_kind == "FlatTorus") return BoundaryModel::flat_torus(n, period, resolution);
  if (model_kind == "RoundSphere") return BoundaryModel::round_sphere(n, radius);
  if (model_kind == "CircleSphere") return BoundaryModel::circle_sphere(n, beta, sphere_radius);
  reject("bad-model", "unknown model kind: " + model_kind);
}

std::map<std::string, std::string> RunConfig::as_map() const {
  auto num = [](double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
  };
  std::map<std::string, std::string> kv;
  kv["command"] = command;
  kv["model.kind"] = model_kind;
  kv["model.n"] = std::to_string(n);
  kv["model.period"] = num(period);
  kv["model.resolution"] = std::to_string(resolution);
  kv["model.radius"] = num(radius);
  kv["model.beta"] = num(beta);
  kv["model.sphere_radius"] = num(sphere_radius);
  kv["data.mass"] = num(mass);
  kv["data.g_n_scale"] = num(g_n_scale);
  kv["data.f"] = f_name;
  kv["tol.ode"] = num(ode_tol);
  kv["tol.fit"] = num(fit_tol);
  kv["tol.identity"] = num(identity_tol);
  kv["series.K"] = std::to_string(K);
  kv["window.t0"] = num(t0);
  kv["window.t1"] = num(t1);
  kv["window.low"] = num(window_low);
  kv["window.high"] = num(window_high);
  kv["seed"] = std::to_string(seed);
  kv["preset"] = preset;
  return kv;
}

std::string RunConfig::canonical_text() const {
  std::ostringstream os;
  for (const auto& [k, v] : as_map()) os << k << " = " << v << "\n";
  return os.str();
}

std::string RunConfig::hash() const {
  const std::string text = canonical_text();
  return hex64(fnv1a64(text.data(), text.size()));
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) reject("io-error", "cannot open config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line.erase(hash_pos);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      reject("bad-config", "config line " + std::to_string(lineno) + " has no '='");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

void apply_config_map(RunConfig& cfg, const std::map<std::string, std::string>& kv) {
  auto get = [&](const char* key, auto& field) {
    auto it = kv.find(key);
    if (it == kv.end()) return;
    using T = std::decay_t<decltype(field)>;
    if constexpr (std::is_same_v<T, std::string>) {
      field = it->second;
    } else if constexpr (std::is_same_v<T, int>) {
      field = std::stoi(it->second);
    } else if constexpr (std::is_same_v<T, unsigned long long>) {
      field = std::stoull(it->second);
    } else {
      field = std::stod(it->second);
    }
  };
  get("model.kind", cfg.model_kind);
  get("model.n", cfg.n);
  get("model.period", cfg.period);
  get("model.resolution", cfg.resolution);
  get("model.radius", cfg.radius);
  get("model.beta", cfg.beta);
  get("model.sphere_radius", cfg.sphere_radius);
  get("data.mass", cfg.mass);
  get("data.g_n_scale", cfg.g_n_scale);
  get("data.f", cfg.f_name);
  get("tol.ode", cfg.ode_tol);
  get("tol.fit", cfg.fit_tol);
  get("tol.identity", cfg.identity_tol);
  get("series.K", cfg.K);
  get("window.t0", cfg.t0);
  get("window.t1", cfg.t1);
  get("window.low", cfg.window_low);
  get("window.high", cfg.window_high);
  get("seed", cfg.seed);
  get("preset", cfg.preset);
}

}  // namespace fglab
