#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "smc/analysis.hpp"
#include "smc/config.hpp"
#include "smc/errors.hpp"
#include "smc/runner.hpp"
#include "smc/scenarios.hpp"
#include "smc/verify.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw smc::ConfigValidationError({"--values: '" + item + "' is not a number"});
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) {
      throw smc::ConfigValidationError({"--values: '" + item + "' is not a number"});
    }
    values.push_back(v);
  }
  return values;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir) {
  smc::RunConfig cfg = smc::load_config(config_path);
  if (!out_dir.empty()) cfg.output.dir = out_dir;
  const smc::RunFiles files = smc::run_scenario(cfg);
  const auto& r = files.result;

  std::cout << "trajectory: " << files.csv.string() << " (" << r.trajectory.samples.size()
            << " samples)\n";
  std::cout << "report:     " << files.report.string() << '\n';
  if (r.reach) {
    std::cout << "t_reach:    "
              << (r.reach->t_reach_measured ? smc::format_double(*r.reach->t_reach_measured)
                                            : std::string("not reached"))
              << " (predicted " << smc::format_double(r.reach->t_r_predicted) << ")\n";
    std::cout << "bound:      "
              << (r.reach->bound_satisfied.value_or(false) ? "satisfied" : "not satisfied")
              << '\n';
  }
  if (r.error) {
    std::cerr << "simulation aborted (" << smc::to_string(r.error->kind) << "): "
              << r.error->message << '\n';
    return kExitFail;
  }
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& param, const std::string& values,
              const std::string& out_path) {
  const smc::RunConfig cfg = smc::load_config(config_path);
  const auto rows = smc::sweep(cfg, param, parse_values(values));
  if (out_path.empty()) {
    smc::write_sweep_csv(rows, std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) throw smc::DataError("cannot write " + out_path);
    smc::write_sweep_csv(rows, out);
  }
  return 0;
}

int cmd_verify(const std::string& suite) {
  const auto& suites = smc::known_suites();
  if (std::find(suites.begin(), suites.end(), suite) == suites.end()) {
    std::cerr << "unknown suite '" << suite << "'; expected one of:";
    for (const auto& s : suites) std::cerr << ' ' << s;
    std::cerr << '\n';
    return kExitUsage;
  }
  const auto results = smc::run_suite(suite);
  smc::print_results(results, std::cout);
  const bool ok = smc::all_passed(results);
  std::cout << (ok ? "all criteria passed" : "some criteria FAILED") << '\n';
  return ok ? 0 : kExitFail;
}

int cmd_gradcheck(const std::string& name, int samples, std::uint64_t seed) {
  smc::ScenarioSpec spec{name, smc::scenario_defaults(name), smc::default_initial_state(name)};
  const smc::Scenario sc = smc::make_scenario(spec, smc::DisturbanceSignal::zero());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    smc::Vector x(sc.surface.dimension);
    for (double& xi : x) xi = coord(rng);
    const smc::StateVector state(x);
    const smc::Vector g = smc::surface_gradient(sc.surface, state);
    const smc::Vector fd = smc::surface_gradient_fd(sc.surface, state, 1e-5);
    double diff = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) diff = std::max(diff, std::abs(g[k] - fd[k]));
    worst = std::max(worst, diff / std::max(smc::max_abs(g), 1e-300));
  }
  std::cout << "scenario " << name << " (" << sc.surface.description << "): " << samples
            << " states, max relative error " << smc::format_double(worst) << " ("
            << (worst <= 1e-6 ? "within" : "exceeds") << " 1e-6)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classic sliding mode control: simulation and verification"};
  app.require_subcommand(1);

  std::string config_path, out_dir, param, values, out_path, suite, scenario;
  int samples = 1000;
  std::uint64_t seed = 1;

  auto* simulate = app.add_subcommand("simulate", "Run one closed-loop simulation");
  simulate->add_option("--config", config_path, "Config JSON")->required();
  simulate->add_option("--out-dir", out_dir, "Override output.dir");

  auto* sweep = app.add_subcommand("sweep", "Run one simulation per parameter value");
  sweep->add_option("--config", config_path, "Config JSON")->required();
  sweep->add_option("--param", param, "Dotted path of a numeric field, e.g. controller.n")
      ->required();
  sweep->add_option("--values", values, "Comma-separated values")->required();
  sweep->add_option("--out", out_path, "Write the aggregate CSV here instead of stdout");

  auto* verify = app.add_subcommand("verify", "Run an acceptance suite");
  verify->add_option("suite", suite, "reaching | disturbance | gradients | lyapunov | all")
      ->required();

  auto* gradcheck = app.add_subcommand("gradcheck", "Compare analytic and numerical gradients");
  gradcheck->add_option("--scenario", scenario, "Scenario name")->required();
  gradcheck->add_option("--samples", samples, "Random states")->check(CLI::PositiveNumber);
  gradcheck->add_option("--seed", seed, "Sampling seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*simulate) return cmd_simulate(config_path, out_dir);
    if (*sweep) return cmd_sweep(config_path, param, values, out_path);
    if (*verify) return cmd_verify(suite);
    if (*gradcheck) return cmd_gradcheck(scenario, samples, seed);
  } catch (const smc::ConfigValidationError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const smc::Error& e) {
    std::cerr << smc::to_string(e.kind()) << ": " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
