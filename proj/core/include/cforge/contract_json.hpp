#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "cforge/contract.hpp"
#include "cforge/parser.hpp"

namespace cforge {

/// {"input_vars": [...], "output_vars": [...], "assumptions": [...], "guarantees": [...]}
/// Constraint strings keep full double precision.
nlohmann::json contract_to_json(const PolyhedralContract& c);

/// Throws ConfigError on a malformed document, ParseError or InterfaceError on bad content.
PolyhedralContract contract_from_json(const nlohmann::json& doc);
PolyhedralContract load_contract_file(const std::filesystem::path& path);

nlohmann::json terms_to_json(const TermList& terms);
nlohmann::json diagnostic_to_json(const IncompatibilityDiagnostic& d);
nlohmann::json parse_error_to_json(const ParseError& e);
nlohmann::json refinement_to_json(const RefinementResult& r);

/// Infinite ends become null.
nlohmann::json range_to_json(const VarRange& r);
nlohmann::json number_or_null(double value);

/// Reads a whole JSON file; ConfigError on I/O or syntax problems.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace cforge
