#include "cforge/contract_json.hpp"

#include <cmath>
#include <fstream>

namespace cforge {
namespace {

std::vector<std::string> string_array(const nlohmann::json& doc, const char* key, bool required) {
  if (!doc.contains(key)) {
    if (required) throw ConfigError(std::string("contract JSON is missing '") + key + "'");
    return {};
  }
  const auto& value = doc.at(key);
  if (!value.is_array()) throw ConfigError(std::string("contract JSON field '") + key + "' must be an array");
  std::vector<std::string> out;
  for (const auto& item : value) {
    if (!item.is_string()) throw ConfigError(std::string("contract JSON field '") + key + "' must hold strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace

nlohmann::json terms_to_json(const TermList& terms) { return render(terms, NumberStyle::Exact); }

nlohmann::json contract_to_json(const PolyhedralContract& c) {
  return {{"input_vars", c.inputs()},
          {"output_vars", c.outputs()},
          {"assumptions", terms_to_json(c.assumptions())},
          {"guarantees", terms_to_json(c.guarantees())},
          {"compatible", c.is_compatible()},
          {"consistent", c.is_consistent()}};
}

PolyhedralContract contract_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("contract JSON must be an object");
  return PolyhedralContract::from_strings(string_array(doc, "input_vars", true), string_array(doc, "output_vars", true),
                                          string_array(doc, "assumptions", false),
                                          string_array(doc, "guarantees", false));
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

PolyhedralContract load_contract_file(const std::filesystem::path& path) {
  return contract_from_json(read_json_file(path));
}

nlohmann::json diagnostic_to_json(const IncompatibilityDiagnostic& d) {
  return {{"variables", std::vector<std::string>(d.variables.begin(), d.variables.end())},
          {"failed_terms", terms_to_json(d.failed_terms)},
          {"context_terms", terms_to_json(d.context_terms)},
          {"message", d.message()}};
}

nlohmann::json parse_error_to_json(const ParseError& e) {
  return {{"line", e.line()}, {"column", e.column()}, {"expected", e.expected()}, {"message", e.what()}};
}

nlohmann::json refinement_to_json(const RefinementResult& r) {
  return {{"refines", r.holds},
          {"violated_assumptions", terms_to_json(r.violated_assumptions)},
          {"violated_guarantees", terms_to_json(r.violated_guarantees)}};
}

nlohmann::json number_or_null(double value) {
  if (!std::isfinite(value)) return nullptr;
  return value;
}

nlohmann::json range_to_json(const VarRange& r) {
  return {{"lower", number_or_null(r.lower)}, {"upper", number_or_null(r.upper)}};
}

}  // namespace cforge
