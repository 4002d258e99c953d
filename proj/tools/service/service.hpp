#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace cforge::service {

struct Response {
  int status = 200;
  nlohmann::json body;  // {ok, result, diagnostic, error, elapsed_ms}
};

/// Routes one request to the library. Never throws; unexpected failures map to 500.
///
///   POST /api/compose|quotient|merge|refines|bounds|optimize
///        {"contracts": [...], "options": {...}}
///   POST /api/mission/schedulability  {"options": {"sequence", "hyperparameters", "requirements"}}
///   POST /api/aircraft/evaluate       {"options": {"operating_point", "hx", "tolerances", ...}}
///   POST /api/aircraft/explore        {"options": <exploration config>}
///   GET  /api/health
Response handle(std::string_view method, std::string_view path, std::string_view body);

struct ServerOptions {
  std::string host = "0.0.0.0";
  int port = 8080;
  /// Directory of static UI assets served at "/", empty for none.
  std::string static_dir;
};

/// Blocks until the server stops. Returns false when the port cannot be bound.
bool serve(const ServerOptions& options);

/// --port if given (non-zero), else the PORT environment variable, else 8080.
int resolve_port(int flag_value);

}  // namespace cforge::service
