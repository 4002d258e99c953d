#include "json_views.hpp"

#include <set>

#include "cforge/contract_json.hpp"

namespace cforge::service {

using nlohmann::json;

json bounds_to_json(const PolyhedralContract& c, const std::vector<std::string>& vars) {
  json out = json::object();
  for (const auto& v : vars) out[v] = range_to_json(get_variable_bounds(c, v));
  return out;
}

json lp_outcome_to_json(const LpOutcome& o) {
  const char* status = o.status == LpStatus::Optimal ? "optimal" : o.status == LpStatus::Unbounded ? "unbounded" : "infeasible";
  json j = {{"status", status}, {"value", nullptr}, {"witness", nullptr}};
  if (o.value) j["value"] = *o.value;
  if (o.witness) j["witness"] = json(*o.witness);
  return j;
}

json explore_to_json(const std::vector<aircraft::InstanceResult>& results) {
  json rows = json::array();
  std::set<aircraft::HxKind> kinds;
  for (const auto& r : results) {
    rows.push_back(aircraft::instance_to_json(r));
    kinds.insert(r.hx);
  }
  json summary = json::object();
  for (auto hx : kinds) {
    json pairs = json::array();
    for (const auto& [mi, ma] : aircraft::covering_pairs(results, hx)) pairs.push_back({{"mdot_in", mi}, {"mdot_a", ma}});
    const auto policy = aircraft::two_level_policy(results, hx);
    std::size_t valid = 0;
    for (const auto& r : results) valid += (r.hx == hx && r.refines_spec) ? 1 : 0;
    summary[std::string(aircraft::to_string(hx))] = {
        {"valid_instances", valid},
        {"covering_pairs", pairs},
        {"two_level_policy", policy ? json{{"low", policy->first}, {"high", policy->second}} : json(nullptr)}};
  }
  return {{"rows", rows}, {"summary", summary}};
}

}  // namespace cforge::service
