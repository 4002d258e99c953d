#include "service.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <map>

#include "cforge/aircraft.hpp"
#include "cforge/contract_json.hpp"
#include "cforge/format.hpp"
#include "cforge/mission.hpp"
#include "cforge/mission_sweep.hpp"
#include "cforge/parser.hpp"
#include "json_views.hpp"

namespace cforge::service {
namespace {

using nlohmann::json;

// Carries an HTTP status out of a handler.
struct HttpFailure {
  int status;
  std::string message;
  json diagnostic;
};

[[noreturn]] void bad_request(const std::string& message) { throw HttpFailure{400, message, nullptr}; }

struct Request {
  json contracts = json::array();
  json options = json::object();
};

Request parse_request(std::string_view body) {
  json doc;
  try {
    doc = body.empty() ? json::object() : json::parse(body);
  } catch (const json::parse_error& e) {
    bad_request(std::string("malformed JSON body: ") + e.what());
  }
  if (!doc.is_object()) bad_request("request body must be a JSON object");
  Request r;
  if (doc.contains("contracts")) {
    if (!doc["contracts"].is_array()) bad_request("'contracts' must be an array");
    r.contracts = doc["contracts"];
  }
  if (doc.contains("options")) {
    if (!doc["options"].is_object()) bad_request("'options' must be an object");
    r.options = doc["options"];
  }
  return r;
}

std::vector<PolyhedralContract> contracts(const Request& r, std::size_t n) {
  if (r.contracts.size() != n) {
    bad_request("expected " + std::to_string(n) + " contract(s), got " + std::to_string(r.contracts.size()));
  }
  std::vector<PolyhedralContract> out;
  for (const auto& c : r.contracts) out.push_back(contract_from_json(c));
  return out;
}

VarSet keep_set(const json& options) {
  VarSet keep;
  if (!options.contains("keep")) return keep;
  if (!options["keep"].is_array()) bad_request("'keep' must be an array of variable names");
  for (const auto& v : options["keep"]) {
    if (!v.is_string()) bad_request("'keep' must be an array of variable names");
    keep.insert(v.get<std::string>());
  }
  return keep;
}

std::string string_option(const json& options, const char* key) {
  if (!options.contains(key) || !options[key].is_string()) bad_request(std::string("missing string option '") + key + "'");
  return options[key].get<std::string>();
}

json contract_result(const PolyhedralContract& c) {
  json j = contract_to_json(c);
  j["text"] = format_contract(c);
  return j;
}

json op_compose(const Request& r) {
  const auto c = contracts(r, 2);
  return contract_result(compose(c[0], c[1], keep_set(r.options)));
}

json op_quotient(const Request& r) {
  const auto c = contracts(r, 2);
  return contract_result(quotient(c[0], c[1]));
}

json op_merge(const Request& r) {
  const auto c = contracts(r, 2);
  return contract_result(merge(c[0], c[1]));
}

json op_refines(const Request& r) {
  const auto c = contracts(r, 2);
  return refinement_to_json(refines(c[0], c[1]));
}

json op_bounds(const Request& r) {
  const auto c = contracts(r, 1);
  std::vector<std::string> vars;
  if (r.options.contains("vars")) {
    if (!r.options["vars"].is_array()) bad_request("'vars' must be an array");
    for (const auto& v : r.options["vars"]) vars.push_back(v.get<std::string>());
  } else if (r.options.contains("var")) {
    vars.push_back(string_option(r.options, "var"));
  } else {
    vars = c[0].inputs();
    vars.insert(vars.end(), c[0].outputs().begin(), c[0].outputs().end());
  }
  return bounds_to_json(c[0], vars);
}

json op_optimize(const Request& r) {
  const auto c = contracts(r, 1);
  const LinearExpr objective = parse_expression(string_option(r.options, "expr"));
  const std::string dir = r.options.value("direction", std::string("max"));
  if (dir != "max" && dir != "min") bad_request("'direction' must be \"max\" or \"min\"");
  return lp_outcome_to_json(optimize(c[0], objective, dir == "max" ? Direction::Max : Direction::Min));
}

json op_schedulability(const Request& r) {
  const json& o = r.options;
  std::vector<mission::TaskKind> sequence = mission::canonical_sequence();
  if (o.contains("sequence")) {
    if (!o["sequence"].is_array()) bad_request("'sequence' must be an array of task names");
    sequence = mission::parse_sequence(o["sequence"].get<std::vector<std::string>>());
  }
  if (!o.contains("hyperparameters")) bad_request("missing option 'hyperparameters'");
  const auto hyper = mission::hyperparameters_from_json(o["hyperparameters"]);
  const auto req = o.contains("requirements") ? mission::requirements_from_json(o["requirements"])
                                              : mission::OperationalRequirements{};
  json j = mission::schedule_to_json(mission::evaluate_schedule(sequence, hyper, req));
  j["steps"] = sequence.size();
  return j;
}

json op_aircraft_evaluate(const Request& r) {
  const json& o = r.options;
  if (!o.contains("operating_point")) bad_request("missing option 'operating_point'");
  const auto op = aircraft::operating_point_from_json(o["operating_point"]);
  const auto hx = o.contains("hx") ? aircraft::parse_hx_kind(o["hx"].get<std::string>()) : aircraft::HxKind::Fixed;
  const auto eps = o.contains("tolerances") ? aircraft::tolerances_from_json(o["tolerances"])
                                            : aircraft::ToleranceVector::uniform(0.01);
  return aircraft::instance_to_json(aircraft::evaluate_instance(op, eps, hx, aircraft::model_from_json(o)));
}

json op_aircraft_explore(const Request& r) {
  return explore_to_json(aircraft::explore_grid(aircraft::explore_config_from_json(r.options)));
}

using Handler = std::function<json(const Request&)>;

const std::map<std::string, Handler, std::less<>>& post_routes() {
  static const std::map<std::string, Handler, std::less<>> routes = {
      {"/api/compose", op_compose},
      {"/api/quotient", op_quotient},
      {"/api/merge", op_merge},
      {"/api/refines", op_refines},
      {"/api/bounds", op_bounds},
      {"/api/optimize", op_optimize},
      {"/api/mission/schedulability", op_schedulability},
      {"/api/aircraft/evaluate", op_aircraft_evaluate},
      {"/api/aircraft/explore", op_aircraft_explore},
  };
  return routes;
}

Response failure(int status, const std::string& message, json diagnostic = nullptr) {
  return {status, {{"ok", false}, {"result", nullptr}, {"diagnostic", std::move(diagnostic)}, {"error", message}}};
}

Response dispatch(std::string_view method, std::string_view path, std::string_view body) {
  if (path == "/api/health") {
    if (method != "GET") return failure(405, "use GET");
    return {200, {{"ok", true}, {"result", {{"status", "up"}}}, {"diagnostic", nullptr}}};
  }
  const auto& routes = post_routes();
  const auto it = routes.find(path);
  if (it == routes.end()) return failure(404, "no route " + std::string(path));
  if (method != "POST") return failure(405, "use POST");
  try {
    const Request request = parse_request(body);
    return {200, {{"ok", true}, {"result", it->second(request)}, {"diagnostic", nullptr}}};
  } catch (const HttpFailure& e) {
    return failure(e.status, e.message, e.diagnostic);
  } catch (const IncompatibilityError& e) {
    return failure(422, e.what(), diagnostic_to_json(e.diagnostic()));
  } catch (const ParseError& e) {
    return failure(400, e.what(), parse_error_to_json(e));
  } catch (const ConfigError& e) {
    return failure(400, e.what());
  } catch (const InterfaceError& e) {
    return failure(400, e.what());
  } catch (const RangeError& e) {
    return failure(400, e.what());
  } catch (const nlohmann::json::exception& e) {
    return failure(400, std::string("invalid request: ") + e.what());
  } catch (const Error& e) {
    // InfeasibleRegion, QuotientUnsound, ConstructionError, ExplosionError.
    return failure(422, e.what());
  } catch (const std::exception& e) {
    return failure(500, e.what());
  }
}

}  // namespace

Response handle(std::string_view method, std::string_view path, std::string_view body) {
  const auto start = std::chrono::steady_clock::now();
  Response r = dispatch(method, path, body);
  r.body["elapsed_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

int resolve_port(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("PORT")) {
    char* end = nullptr;
    const long p = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && p > 0 && p < 65536) return static_cast<int>(p);
  }
  return 8080;
}

}  // namespace cforge::service
