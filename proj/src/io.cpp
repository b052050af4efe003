#include "fglab/io.hpp"

#include <cstdio>
#include <fstream>

#include "fglab/errors.hpp"

namespace fglab {

std::uint64_t fnv1a64(const void* data, std::size_t size) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t hash_field(const SymTensorField& f) {
  return fnv1a64(f.data.data(), f.data.size() * sizeof(double));
}

std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

nlohmann::json to_json(const BoundaryModel& m) {
  nlohmann::json j;
  j["kind"] = to_string(m.kind);
  j["n"] = m.n;
  switch (m.kind) {
    case ModelKind::FlatTorus:
      j["periods"] = m.periods;
      j["resolution"] = m.resolution;
      break;
    case ModelKind::RoundSphere:
      j["radius"] = m.radius;
      break;
    case ModelKind::CircleSphere:
      j["circle_length"] = m.circle_length;
      j["sphere_radius"] = m.sphere_radius;
      break;
  }
  return j;
}

BoundaryModel model_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind");
  const int n = j.at("n");
  if (kind == "FlatTorus")
    return BoundaryModel::flat_torus(n, j.at("periods").get<std::vector<double>>(),
                                     j.at("resolution").get<std::vector<int>>());
  if (kind == "RoundSphere") return BoundaryModel::round_sphere(n, j.at("radius"));
  if (kind == "CircleSphere")
    return BoundaryModel::circle_sphere(n, j.at("circle_length"), j.at("sphere_radius"));
  reject("bad-model", "unknown model kind in JSON");
}

nlohmann::json to_json(const FGSeries& s) {
  nlohmann::json j;
  j["schema"] = kSchema;
  j["version"] = kVersion;
  j["model"] = to_json(s.model);
  j["n"] = s.n;
  j["K"] = s.K;
  j["t_max"] = s.t_max;
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : s.coeffs) {
    nlohmann::json jc;
    jc["representation"] = c.rep == Rep::Grid ? "grid" : "blocks";
    jc["data"] = c.data;
    coeffs.push_back(std::move(jc));
  }
  j["coefficients"] = std::move(coeffs);
  if (s.log_obstruction) {
    j["log_obstruction"] = {{"magnitude", s.log_obstruction->second},
                            {"tensor", s.log_obstruction->first.data}};
  } else {
    j["log_obstruction"] = nullptr;
  }
  return j;
}

FGSeries series_from_json(const nlohmann::json& j) {
  FGSeries s;
  s.model = model_from_json(j.at("model"));
  s.n = j.at("n");
  s.K = j.at("K");
  s.t_max = j.at("t_max");
  for (const auto& jc : j.at("coefficients")) {
    SymTensorField f = SymTensorField::zero(s.model);
    f.data = jc.at("data").get<std::vector<double>>();
    if (f.data.size() != SymTensorField::zero(s.model).data.size())
      reject("bad-series", "coefficient size does not match the model");
    s.coeffs.push_back(std::move(f));
  }
  if (static_cast<int>(s.coeffs.size()) != s.K + 1)
    reject("bad-series", "coefficient count does not match K");
  if (!j.at("log_obstruction").is_null()) {
    SymTensorField t = SymTensorField::zero(s.model);
    t.data = j.at("log_obstruction").at("tensor").get<std::vector<double>>();
    s.log_obstruction = {t, j.at("log_obstruction").at("magnitude").get<double>()};
  }
  return s;
}

nlohmann::json to_json(const ConstraintReport& rep) {
  nlohmann::json j;
  j["schema"] = kSchema;
  j["max_divergence"] = rep.max_divergence;
  j["max_hamiltonian"] = rep.max_hamiltonian;
  j["max_riccati_trace"] = rep.max_riccati_trace;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : rep.records)
    rows.push_back({{"t", r.t},
                    {"divergence", r.divergence},
                    {"hamiltonian", r.hamiltonian},
                    {"riccati_trace", r.riccati_trace}});
  j["records"] = std::move(rows);
  return j;
}

nlohmann::json to_json(const IdentityReport& rep, const SymTensorField& tau,
                       const SymTensorField& h, double identity_tol) {
  nlohmann::json j;
  j["schema"] = kSchema;
  j["lhs"] = rep.lhs;
  j["rhs"] = rep.rhs;
  j["residual"] = rep.residual;
  j["richardson_discrepancy"] = rep.richardson_discrepancy;
  j["tolerances"] = {{"identity", identity_tol}};
  j["inputs"] = {{"tau_hash", hex64(hash_field(tau))}, {"h_hash", hex64(hash_field(h))}};
  return j;
}

void write_curve_csv(const MetricCurve& curve, const ConstraintReport* residuals,
                     const std::string& path) {
  std::ofstream out(path);
  if (!out) reject("io-error", "cannot open " + path);
  const std::size_t ncells = curve.values.empty() ? 0 : curve.values[0].data.size();
  out << "t";
  for (std::size_t c = 0; c < ncells; ++c) out << ",g_" << c;
  for (std::size_t c = 0; c < ncells; ++c) out << ",gdot_" << c;
  if (residuals) out << ",divergence,hamiltonian,riccati_trace";
  out << "\n";
  char buf[32];
  auto emit = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << ',' << buf;
  };
  for (std::size_t s = 0; s < curve.t_grid.size(); ++s) {
    std::snprintf(buf, sizeof buf, "%.17g", curve.t_grid[s]);
    out << buf;
    for (std::size_t c = 0; c < ncells; ++c) emit(curve.values[s].data[c]);
    for (std::size_t c = 0; c < ncells; ++c) emit(curve.derivs[s].data[c]);
    if (residuals) {
      const auto& r = residuals->records[s];
      emit(r.divergence);
      emit(r.hamiltonian);
      emit(r.riccati_trace);
    }
    out << "\n";
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) reject("io-error", "cannot open " + path);
  out << content;
}

}  // namespace fglab
