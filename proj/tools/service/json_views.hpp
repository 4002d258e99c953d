#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cforge/aircraft.hpp"
#include "cforge/contract.hpp"

namespace cforge::service {

/// {"T_e": {"lower": ..., "upper": ...}, ...}; InfeasibleRegion for an empty contract.
nlohmann::json bounds_to_json(const PolyhedralContract& c, const std::vector<std::string>& vars);

/// {"status": "optimal"|"unbounded"|"infeasible", "value": x|null, "witness": {...}|null}
nlohmann::json lp_outcome_to_json(const LpOutcome& outcome);

/// Rows plus the covering-pair and two-level-policy summaries per exchanger kind.
nlohmann::json explore_to_json(const std::vector<aircraft::InstanceResult>& results);

}  // namespace cforge::service
