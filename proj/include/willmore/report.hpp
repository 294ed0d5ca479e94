#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "willmore/conformal_gauss.hpp"
#include "willmore/energetics.hpp"
#include "willmore/normalizer.hpp"
#include "willmore/residuals.hpp"

namespace willmore::report {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const EnergyReport& r);
Json to_json(const OscillationResult& o);
Json to_json(const AverageData& a);
Json to_json(const NormalizationResult& n);
Json to_json(const GaussBonnetResult& g);
Json to_json(const ConvergenceStudy& c);
Json to_json(const ResidualField& f); // summary only
Json to_json(const FundamentalForms& f);
Json to_json(const CGMJet& c);

/// Frozen columns, one row per disk, preceded by a version comment.
std::string energy_csv(const std::vector<EnergyReport>& rows);
std::string convergence_csv(const std::vector<ConvergenceStudy>& rows);

} // namespace willmore::report
