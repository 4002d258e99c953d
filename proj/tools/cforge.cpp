#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cforge/aircraft.hpp"
#include "cforge/contract_json.hpp"
#include "cforge/format.hpp"
#include "cforge/mission_sweep.hpp"
#include "cforge/parser.hpp"
#include "cforge/tolerance.hpp"
#include "service/json_views.hpp"
#include "service/service.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitDiagnostic = 2;

struct Options {
  std::vector<std::string> files;
  std::vector<std::string> keep;
  std::vector<std::string> vars;
  std::string expr;
  bool maximize = false;
  bool minimize = false;
  std::string output;
  bool json_stdout = false;
  std::string out_dir = "out";
  std::optional<unsigned> jobs;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<std::size_t> iterations;
  int port = 0;
  std::string static_dir;
};

void write_json(const json& j, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw cforge::ConfigError("cannot write " + path);
  out << j.dump(2) << "\n";
}

// Prints the text block (or JSON with --json) and writes JSON to --output.
void emit(const Options& o, const std::string& text, const json& j) {
  if (o.json_stdout) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
  }
  if (!o.output.empty()) write_json(j, o.output);
}

void emit_contract(const Options& o, const cforge::PolyhedralContract& c) {
  emit(o, cforge::format_contract(c), cforge::contract_to_json(c));
}

std::vector<cforge::PolyhedralContract> load(const Options& o) {
  std::vector<cforge::PolyhedralContract> out;
  for (const auto& f : o.files) out.push_back(cforge::load_contract_file(f));
  return out;
}

std::string format_range(const cforge::VarRange& r) {
  return "[" + cforge::format_number(r.lower) + ", " + cforge::format_number(r.upper) + "]";
}

int run_compose(const Options& o) {
  const auto c = load(o);
  emit_contract(o, cforge::compose(c[0], c[1], cforge::VarSet(o.keep.begin(), o.keep.end())));
  return kExitOk;
}

int run_quotient(const Options& o) {
  const auto c = load(o);
  emit_contract(o, cforge::quotient(c[0], c[1]));
  return kExitOk;
}

int run_merge(const Options& o) {
  const auto c = load(o);
  emit_contract(o, cforge::merge(c[0], c[1]));
  return kExitOk;
}

int run_refines(const Options& o) {
  const auto c = load(o);
  const auto r = cforge::refines(c[0], c[1]);
  std::string text = std::string("refines: ") + (r.holds ? "true" : "false") + "\n";
  auto list = [&](const char* title, const cforge::TermList& terms) {
    if (terms.empty()) return;
    text += std::string(title) + ":\n";
    for (const auto& line : cforge::render(terms)) text += "    " + line + "\n";
  };
  list("assumptions not implied", r.violated_assumptions);
  list("guarantees not met", r.violated_guarantees);
  emit(o, text, cforge::refinement_to_json(r));
  return kExitOk;
}

int run_bounds(const Options& o) {
  const auto c = load(o);
  std::vector<std::string> vars = o.vars;
  if (vars.empty()) {
    vars = c[0].inputs();
    vars.insert(vars.end(), c[0].outputs().begin(), c[0].outputs().end());
  }
  const json j = cforge::service::bounds_to_json(c[0], vars);
  std::string text;
  for (const auto& v : vars) text += v + " in " + format_range(cforge::get_variable_bounds(c[0], v)) + "\n";
  emit(o, text, j);
  return kExitOk;
}

int run_optimize(const Options& o) {
  const auto c = load(o);
  const auto dir = o.minimize ? cforge::Direction::Min : cforge::Direction::Max;
  const auto outcome = cforge::optimize(c[0], cforge::parse_expression(o.expr), dir);
  const json j = cforge::service::lp_outcome_to_json(outcome);
  std::string text = std::string(o.minimize ? "min " : "max ") + o.expr + " = ";
  text += outcome.value ? cforge::format_number(*outcome.value) : j["status"].get<std::string>();
  emit(o, text, j);
  return outcome.status == cforge::LpStatus::Infeasible ? kExitError : kExitOk;
}

int run_sweep(const Options& o) {
  auto config = cforge::mission::sweep_config_from_json(cforge::read_json_file(o.files.at(0)));
  if (o.jobs) config.jobs = *o.jobs;
  if (o.seed) config.seed = *o.seed;
  const auto result = cforge::mission::run_sweep(config);
  cforge::mission::write_sweep_outputs(result, config, o.out_dir);
  const json j = {{"combinations", result.rows.size()},
                  {"admissible", result.admissible},
                  {"admissibility_rate", result.admissibility_rate()},
                  {"scenario_errors", result.scenario_errors.size()},
                  {"out_dir", o.out_dir}};
  std::string text = "admissible " + std::to_string(result.admissible) + " / " + std::to_string(result.rows.size()) +
                     " (" + cforge::format_number(100.0 * result.admissibility_rate()) + "%) in " +
                     cforge::format_number(result.seconds) + " s; outputs in " + o.out_dir + "\n";
  emit(o, text, j);
  return kExitOk;
}

int run_explore(const Options& o) {
  auto config = cforge::aircraft::explore_config_from_json(cforge::read_json_file(o.files.at(0)));
  if (o.jobs) config.jobs = *o.jobs;
  const auto results = cforge::aircraft::explore_grid(config);
  cforge::aircraft::write_explore_outputs(results, o.out_dir);
  const json j = cforge::service::explore_to_json(results);
  fs::create_directories(o.out_dir);
  write_json(j["summary"], (fs::path(o.out_dir) / "summary.json").string());
  std::string text;
  for (const auto& [hx, s] : j["summary"].items()) {
    text += hx + ": " + std::to_string(s["valid_instances"].get<std::size_t>()) + " valid instances, " +
            std::to_string(s["covering_pairs"].size()) + " covering (mdot_in, mdot_a) pairs, two-level policy ";
    text += s["two_level_policy"].is_null() ? std::string("none")
                                            : cforge::format_number(s["two_level_policy"]["low"].get<double>()) + "/" +
                                                  cforge::format_number(s["two_level_policy"]["high"].get<double>());
    text += "\n";
  }
  text += "outputs in " + o.out_dir + "\n";
  emit(o, text, j["summary"]);
  return kExitOk;
}

int run_aircraft_optimize(const Options& o) {
  auto config = cforge::aircraft::optimize_config_from_json(cforge::read_json_file(o.files.at(0)));
  if (o.iterations) config.iterations = *o.iterations;
  const auto r = cforge::aircraft::optimize_tolerances(config);
  const json j = cforge::aircraft::optimize_result_to_json(r);
  fs::create_directories(o.out_dir);
  write_json(j, (fs::path(o.out_dir) / "optimize.json").string());
  std::string text = "cost " + cforge::format_number(r.start_cost, cforge::NumberStyle::Exact) + " -> " +
                     cforge::format_number(r.best_cost, cforge::NumberStyle::Exact) +
                     " after " + std::to_string(r.iterations) + " iterations\n";
  const auto eps = r.best.to_array();
  for (std::size_t i = 0; i < eps.size(); ++i) {
    text += "  " + cforge::aircraft::ToleranceVector::names()[i] + " = " + cforge::format_number(eps[i]) + "\n";
  }
  text += std::string("refines spec: ") + (r.best_instance.refines_spec ? "true" : "false");
  if (!r.best_instance.reason.empty()) text += " (" + r.best_instance.reason + ")";
  text += "\n";
  emit(o, text, j);
  return kExitOk;
}

int run_serve(const Options& o) {
  cforge::service::ServerOptions s;
  s.port = cforge::service::resolve_port(o.port);
  s.static_dir = o.static_dir;
  if (!cforge::service::serve(s)) {
    std::cerr << "error: could not listen on port " << s.port << "\n";
    return kExitError;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polyhedral assume-guarantee contracts: algebra, mission lab and aircraft lab"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--tol", o.tol, "Numeric tolerance (overrides CONTRACT_FORGE_TOL)")->check(CLI::PositiveNumber);
  app.add_option("-o,--output", o.output, "Also write the JSON result to this file");
  app.add_flag("--json", o.json_stdout, "Print JSON instead of the text block");

  using Runner = int (*)(const Options&);
  Runner runner = nullptr;
  auto binary = [&](const char* name, const char* help, Runner r, const char* a, const char* b) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("files", o.files, std::string(a) + " and " + b)->required()->expected(2)->check(CLI::ExistingFile);
    cmd->callback([&runner, r] { runner = r; });
    return cmd;
  };
  binary("compose", "Compose two contracts", run_compose, "UPSTREAM.json", "DOWNSTREAM.json")
      ->add_option("--keep", o.keep, "Connected variables to keep as outputs")
      ->delimiter(',');
  binary("quotient", "Quotient of a top-level contract by a partial implementation", run_quotient, "TOP.json",
         "PART.json");
  binary("merge", "Merge two viewpoint contracts", run_merge, "A.json", "B.json");
  binary("refines", "Check whether the first contract refines the second", run_refines, "C1.json", "C2.json");

  auto* bounds = app.add_subcommand("bounds", "Variable bounds under assumptions and guarantees");
  bounds->add_option("file", o.files, "Contract JSON")->required()->expected(1)->check(CLI::ExistingFile);
  bounds->add_option("--var", o.vars, "Variable (repeatable; default all)");
  bounds->callback([&] { runner = run_bounds; });

  auto* opt = app.add_subcommand("optimize", "Optimize a linear objective over a contract");
  opt->add_option("file", o.files, "Contract JSON")->required()->expected(1)->check(CLI::ExistingFile);
  opt->add_option("--expr", o.expr, "Objective, e.g. \"2 x - y\"")->required();
  auto* max_flag = opt->add_flag("--max", o.maximize, "Maximize");
  auto* min_flag = opt->add_flag("--min", o.minimize, "Minimize");
  max_flag->excludes(min_flag);
  opt->callback([&] {
    if (!o.maximize && !o.minimize) throw CLI::ValidationError("optimize", "one of --max or --min is required");
    runner = run_optimize;
  });

  auto* mission = app.add_subcommand("mission", "Spacecraft mission lab");
  mission->require_subcommand(1);
  auto* sweep = mission->add_subcommand("sweep", "Latin hypercube sweep of scenarios and requirements");
  sweep->add_option("config", o.files, "Sweep configuration JSON")->required()->expected(1)->check(CLI::ExistingFile);
  sweep->add_option("--out-dir", o.out_dir, "Output directory");
  sweep->add_option("--jobs", o.jobs, "Worker threads (0 = all cores)");
  sweep->add_option("--seed", o.seed, "Sampling seed");
  sweep->callback([&] { runner = run_sweep; });

  auto* aircraft = app.add_subcommand("aircraft", "Aircraft thermal lab");
  aircraft->require_subcommand(1);
  auto* explore = aircraft->add_subcommand("explore", "Evaluate the design grid");
  explore->add_option("config", o.files, "Exploration configuration JSON")
      ->required()
      ->expected(1)
      ->check(CLI::ExistingFile);
  explore->add_option("--out-dir", o.out_dir, "Output directory");
  explore->add_option("--jobs", o.jobs, "Worker threads (0 = all cores)");
  explore->callback([&] { runner = run_explore; });
  auto* aopt = aircraft->add_subcommand("optimize", "Nelder-Mead search over the tolerance vector");
  aopt->add_option("config", o.files, "Optimization configuration JSON")
      ->required()
      ->expected(1)
      ->check(CLI::ExistingFile);
  aopt->add_option("--out-dir", o.out_dir, "Output directory");
  aopt->add_option("--iterations", o.iterations, "Iteration budget");
  aopt->callback([&] { runner = run_aircraft_optimize; });

  auto* serve = app.add_subcommand("serve", "Run the JSON-over-HTTP service");
  serve->add_option("--port", o.port, "Port (default: PORT environment variable, then 8080)")
      ->check(CLI::Range(1, 65535));
  serve->add_option("--static", o.static_dir, "Directory of UI assets to serve at /");
  serve->callback([&] { runner = run_serve; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    cforge::load_tolerance_from_env();
    if (o.tol) cforge::set_numeric_tolerance(*o.tol);
    return runner(o);
  } catch (const cforge::IncompatibilityError& e) {
    std::cerr << e.what() << "\n";
    if (!o.output.empty()) write_json({{"diagnostic", cforge::diagnostic_to_json(e.diagnostic())}}, o.output);
    return kExitDiagnostic;
  } catch (const cforge::InfeasibleRegion& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
