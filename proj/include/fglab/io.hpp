#pragma once

#include <json.hpp>
#include <string>

#include "fglab/constraint_lab.hpp"
#include "fglab/evolution.hpp"
#include "fglab/series.hpp"

namespace fglab {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kSchema = "fglab/v1";

std::uint64_t fnv1a64(const void* data, std::size_t size);
std::uint64_t hash_field(const SymTensorField& f);
std::string hex64(std::uint64_t v);

nlohmann::json to_json(const BoundaryModel& m);
BoundaryModel model_from_json(const nlohmann::json& j);

nlohmann::json to_json(const FGSeries& s);
FGSeries series_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ConstraintReport& rep);
nlohmann::json to_json(const IdentityReport& rep, const SymTensorField& tau,
                       const SymTensorField& h, double identity_tol);

// CSV: t, flattened tensor components, then residual columns (17 significant digits)
void write_curve_csv(const MetricCurve& curve, const ConstraintReport* residuals,
                     const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace fglab
