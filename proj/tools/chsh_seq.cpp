// chsh_seq: batch front end for mixed sequential CHSH scenarios.
//
//   chsh_seq run      --scenario FILE [--format json|csv] [--tolerance T] [--output PATH]
//   chsh_seq simulate --scenario FILE --samples N --seed S [--output PATH]
//   chsh_seq optimize --dim D --constraint C [--budget B] [--restarts R] [--seed S] [--output PATH]
//   chsh_seq sweep    --family spin_angles --grid start:stop:steps [--format csv|json] [--output PATH]
//
// Exit codes: 0 success, 2 input error, 3 internal consistency failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "chshseq/chshseq.hpp"

namespace {

using nlohmann::json;
using namespace chshseq;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string scenario;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t budget = SearchOptions{}.budget;
  std::size_t restarts = SearchOptions{}.restarts;
  std::size_t dim = 4;
  std::string constraint = "free";
  std::string output;
  std::string format = "json";
  double tolerance = kClassificationTol;
  std::string family = "spin_angles";
  std::string grid;
};

void emit(const Options& opt, const std::string& body) {
  if (opt.output.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(opt.output, std::ios::binary);
  if (!out) throw InputError("cannot write output file " + opt.output);
  out << body;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

ScenarioFile require_scenario(const Options& opt) {
  if (opt.scenario.empty()) throw InputError("a scenario file is required (--scenario FILE)");
  return load_scenario(opt.scenario);
}

void require_format(const Options& opt, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed) {
    if (opt.format == f) return;
  }
  throw InputError("unsupported --format '" + opt.format + "' for this command");
}

int cmd_run(const Options& opt) {
  require_format(opt, {"json", "csv"});
  const auto file = require_scenario(opt);
  if (opt.format == "csv") {
    std::ostringstream os;
    write_analysis_csv(os, chsh_value(file.scenario, opt.tolerance));
    emit(opt, os.str());
    return kExitOk;
  }
  auto report = report_header("run");
  report["scenario"] = scenario_to_json(file.scenario, file.description);
  report["analysis"] = analysis_json(file.scenario, opt.tolerance);
  emit(opt, dump(report));
  return kExitOk;
}

int cmd_simulate(const Options& opt) {
  require_format(opt, {"json"});
  if (opt.samples == 0) throw InputError("--samples must be a positive integer");
  const auto file = require_scenario(opt);
  auto report = report_header("simulate");
  report["scenario"] = scenario_to_json(file.scenario, file.description);
  report["analysis"] = analysis_json(file.scenario, opt.tolerance);
  report["simulation"] = simulation_json(file.scenario, opt.samples, opt.seed);
  emit(opt, dump(report));
  return kExitOk;
}

int cmd_optimize(const Options& opt) {
  require_format(opt, {"json"});
  Constraint constraint;
  try {
    constraint = parse_constraint(opt.constraint);
  } catch (const ParameterError& e) {
    throw InputError(e.what());
  }
  SearchSpace space;
  try {
    space = make_search_space(opt.dim, constraint);
  } catch (const Error& e) {
    throw InputError(e.what());
  }
  SearchOptions search_options;
  search_options.budget = opt.budget;
  search_options.restarts = opt.restarts;
  search_options.seed = opt.seed;
  if (opt.budget < 1 || opt.restarts < 1) throw InputError("--budget and --restarts must be positive");

  const auto result = search(space, search_options);
  std::ostringstream description;
  description << "optimizer best scenario: dim " << space.dim << ", constraint " << to_string(constraint)
              << ", seed " << opt.seed;
  auto report = report_header("optimize");
  report["scenario"] = scenario_to_json(result.best_scenario, description.str());
  report["search"] = search_json(space, search_options, result);
  report["analysis"] = analysis_json(result.best_scenario, opt.tolerance);
  emit(opt, dump(report));
  return kExitOk;
}

int cmd_sweep(const Options& opt) {
  require_format(opt, {"json", "csv"});
  if (opt.grid.empty()) throw InputError("--grid start:stop:steps is required");
  const auto family = parse_sweep_family(opt.family);
  const auto grid = parse_grid(opt.grid);
  const auto rows = sweep(family, grid, opt.tolerance);
  if (opt.format == "csv") {
    std::ostringstream os;
    write_sweep_csv(os, rows);
    emit(opt, os.str());
  } else {
    auto report = report_header("sweep");
    report["sweep"] = sweep_json(family, grid, rows);
    emit(opt, dump(report));
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixed sequential Bell-CHSH scenarios: analysis, simulation, search and sweeps"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--output,-o", opt.output, "Write the report here instead of stdout");
    sub->add_option("--format", opt.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--tolerance", opt.tolerance, "Classification tolerance at the 2, 2sqrt2, 2sqrt3 thresholds")
        ->check(CLI::NonNegativeNumber);
  };

  auto* run = app.add_subcommand("run", "Analytic pipeline for one scenario");
  run->add_option("scenario_path", opt.scenario, "Scenario JSON file");
  run->add_option("--scenario", opt.scenario, "Scenario JSON file");
  add_common(run);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo of the four mixed sequential pairs");
  simulate->add_option("scenario_path", opt.scenario, "Scenario JSON file");
  simulate->add_option("--scenario", opt.scenario, "Scenario JSON file");
  simulate->add_option("--samples,-n", opt.samples, "Trajectories per observable pair")->required();
  simulate->add_option("--seed", opt.seed, "Master seed");
  add_common(simulate);

  auto* optimize = app.add_subcommand("optimize", "Search observables maximizing lambda_max of the CHSH operator");
  optimize->add_option("--dim", opt.dim, "Hilbert space dimension");
  optimize->add_option("--constraint", opt.constraint, "free | product_form | a_equals_a_prime | primes_identity");
  optimize->add_option("--budget", opt.budget, "Objective evaluations per restart");
  optimize->add_option("--restarts", opt.restarts, "Independent restarts");
  optimize->add_option("--seed", opt.seed, "Master seed");
  add_common(optimize);

  auto* sweep_cmd = app.add_subcommand("sweep", "CHSH over a grid of Bob angles");
  sweep_cmd->add_option("--family", opt.family, "spin_angles | qubit_spin");
  sweep_cmd->add_option("--grid", opt.grid, "start:stop:steps (radians)");
  add_common(sweep_cmd);
  opt.format = "json";

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }
  if (sweep_cmd->parsed() && sweep_cmd->count("--format") == 0) opt.format = "csv";

  try {
    if (run->parsed()) return cmd_run(opt);
    if (simulate->parsed()) return cmd_simulate(opt);
    if (optimize->parsed()) return cmd_optimize(opt);
    return cmd_sweep(opt);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InternalConsistencyError& e) {
    std::cerr << "internal consistency failure: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
