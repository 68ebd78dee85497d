#pragma once

#include <string>

#include <json.hpp>

#include "drxsim/sim_engine.hpp"
#include "drxsim/trace_hygiene.hpp"

namespace drxsim {

nlohmann::json report_to_json(const EnergyReport& report);
EnergyReport report_from_json(const nlohmann::json& j);

/// CSV with header `label,total_J,ratio`.
std::string comparison_to_csv(const ComparisonTable& table);

/// Static bar chart of per-label ratios.
std::string comparison_to_svg(const ComparisonTable& table);

nlohmann::json analysis_to_json(const SlotScan& scan, const nlohmann::json& parameters);

}  // namespace drxsim
