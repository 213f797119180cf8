#include "smc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "smc/analysis.hpp"
#include "smc/config.hpp"
#include "smc/errors.hpp"
#include "smc/runner.hpp"
#include "smc/scenarios.hpp"

namespace smc {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

CriterionResult make(std::string id, std::string description, double measured,
                     std::string expected, std::string tolerance, bool pass) {
  return {std::move(id), std::move(description), num(measured), std::move(expected),
          std::move(tolerance), pass};
}

RunConfig base_config(const std::string& scenario, Vector x0, double n) {
  RunConfig cfg;
  cfg.scenario.name = scenario;
  cfg.scenario.parameters = scenario_defaults(scenario);
  cfg.scenario.initial_state = std::move(x0);
  cfg.controller.n = n;
  cfg.integrator.step = 1e-4;
  cfg.eps_band = 1e-3;
  return cfg;
}

// Double integrator with d = 0.8 sin(5t) and d_m = 1.
RunConfig matched_sinusoid_config() {
  RunConfig cfg = base_config("double-integrator", {1.0, 1.0}, 1.0);
  cfg.integrator.t_end = 10.0;
  cfg.controller.d_m = 1.0;
  cfg.disturbance = DisturbanceSignal::sinusoid(0.8, 5.0);
  return cfg;
}

// Unmatched w = 0.5 sin(2t) on x1'. The gain n = 0.25 is below sup|w|, so
// without compensation the disturbance can push s off the surface.
RunConfig unmatched_config(double w_uim) {
  RunConfig cfg = base_config("double-integrator", {0.25, 0.0}, 0.25);
  cfg.integrator.t_end = 10.0;
  cfg.controller.w_uim = w_uim;
  cfg.unmatched = DisturbanceSignal::sinusoid(0.5, 2.0);
  return cfg;
}

double chatter_band(const RunConfig& cfg, const Scenario& sc) {
  return 2.0 * cfg.integrator.step * reaching_rate_bound(sc, cfg.controller);
}

std::vector<CriterionResult> reaching_suite() {
  std::vector<CriterionResult> out;

  // A1: measured reach vs |s0|/n.
  {
    RunConfig cfg = base_config("pure-integrator", {2.0}, 1.0);
    cfg.integrator.t_end = 3.0;
    const RunResult r = execute(cfg);
    const double t = r.reach && r.reach->t_reach_measured ? *r.reach->t_reach_measured : NAN;
    out.push_back(make("A1", "reach time, pure-integrator n=1 s0=2", t, "[1.997, 2.003]", "-",
                       t >= 1.997 && t <= 2.003));
  }
  {
    RunConfig cfg = base_config("pure-integrator", {2.0}, 1.0);
    cfg.integrator.t_end = 5.0;
    const std::vector<double> gains{0.5, 1.0, 2.0, 4.0};
    const auto rows = sweep(cfg, "controller.n", gains);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double expected = 2.0 / gains[i];
      const double t = rows[i].t_reach.value_or(NAN);
      out.push_back(make("A1", "reach time sweep n=" + num(gains[i]), t, num(expected), "2e-3",
                         std::abs(t - expected) <= 2e-3));
    }
  }

  // A2: straight-line solution of the reaching law.
  IntegratorConfig integ;
  integ.step = 1e-4;
  integ.t_end = 3.0;
  for (auto [n, s0] : {std::pair{1.0, 2.0}, std::pair{2.0, -3.0}}) {
    const double dev = compare_closed_form(simulate_reaching_law(n, s0, integ), n, s0);
    out.push_back(make("A2", "closed-form deviation n=" + num(n) + " s0=" + num(s0), dev, "0",
                       "1e-3", dev <= 1e-3));
  }
  {
    const double dev = compare_closed_form(simulate_reaching_law(1.0, 0.0, integ), 1.0, 0.0);
    out.push_back(make("A2", "s0=0 stays on surface", dev, "0", "step*n = 1e-4", dev <= 1e-4));
  }

  // A9: first-order convergence of explicit Euler.
  {
    IntegratorConfig coarse = integ;
    coarse.method = Method::ExplicitEuler;
    coarse.step = 1e-3;
    IntegratorConfig fine = coarse;
    fine.step = 5e-4;
    const double dc = compare_closed_form(simulate_reaching_law(1.0, 2.0, coarse), 1.0, 2.0);
    const double df = compare_closed_form(simulate_reaching_law(1.0, 2.0, fine), 1.0, 2.0);
    const double ratio = df > 0.0 ? dc / df : INFINITY;
    out.push_back(make("A9", "euler deviation ratio step 1e-3 / 5e-4", ratio, ">= 1.8", "-",
                       ratio >= 1.8));
  }
  return out;
}

struct ResidualStats {
  double worst = -INFINITY;
  double worst_abs = 0.0;
};

ResidualStats sample_residuals(const Scenario& sc, const ControllerConfig& config, double d_m,
                               std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  std::uniform_real_distribution<double> time(0.0, 10.0);
  std::uniform_real_distribution<double> dist(-d_m, d_m);
  ResidualStats stats;
  int taken = 0;
  while (taken < 1000) {
    Vector x(sc.model.dimension);
    for (double& xi : x) xi = coord(rng);
    const StateVector state(x);
    if (surface_value(sc.surface, state) == 0.0) continue;
    const double d = d_m > 0.0 ? dist(rng) : 0.0;
    const double r = reaching_residual(config, sc.model, sc.surface, state, time(rng), d);
    stats.worst = std::max(stats.worst, r);
    stats.worst_abs = std::max(stats.worst_abs, std::abs(r));
    ++taken;
  }
  return stats;
}

std::vector<CriterionResult> disturbance_suite() {
  std::vector<CriterionResult> out;
  std::mt19937_64 rng(20170428);

  // A3: pointwise reaching condition.
  for (const auto& name : known_scenarios()) {
    ScenarioSpec spec{name, scenario_defaults(name), default_initial_state(name)};
    const bool has_unmatched = name != "pure-integrator";
    const DisturbanceSignal w = has_unmatched ? DisturbanceSignal::seeded_random(0.5, 10.0, 7)
                                              : DisturbanceSignal::zero();
    const Scenario sc = make_scenario(spec, DisturbanceSignal::zero(), w);
    ControllerConfig config;
    config.n = 1.0;
    config.d_m = 1.0;
    config.w_uim = sc.unmatched_gain_bound;  // |B| = 1 for every scenario
    const ResidualStats disturbed = sample_residuals(sc, config, config.d_m, rng);
    out.push_back(make("A3", "max residual, bounded d and w_u, " + name, disturbed.worst, "<= 0",
                       "1e-9", disturbed.worst <= 1e-9));

    const Scenario nominal = make_scenario(spec, DisturbanceSignal::zero());
    ControllerConfig plain;
    plain.n = 1.0;
    const ResidualStats exact = sample_residuals(nominal, plain, 0.0, rng);
    out.push_back(make("A3", "|residual|, nominal, " + name, exact.worst_abs, "0", "1e-12",
                       exact.worst_abs <= 1e-12));
  }

  // A4: matched disturbance rejected by d_m.
  {
    const RunConfig cfg = matched_sinusoid_config();
    const RunResult r = execute(cfg);
    const bool sat = r.reach && r.reach->bound_satisfied.value_or(false) && !r.error;
    out.push_back(make("A4", "bound satisfied, d=0.8 sin 5t, d_m=1", sat ? 1.0 : 0.0, "true", "-",
                       sat));
    const double band = r.chatter ? r.chatter->band_amplitude : INFINITY;
    out.push_back(make("A4", "post-reach band amplitude", band, "<= 1e-3", "-", band <= 1e-3));
  }

  // A5: undersized bound.
  {
    RunConfig cfg = matched_sinusoid_config();
    cfg.disturbance = DisturbanceSignal::constant(1.5);
    const Scenario sc = build_scenario(cfg);
    const RunResult r = execute(cfg);
    const double t_pred = reaching_time_predicted(cfg.controller.n, r.trajectory.samples.front().s);
    const double escaped = max_abs_s_after(r.trajectory, t_pred + 2.0 * cfg.integrator.step);
    const double limit = 10.0 * chatter_band(cfg, sc);
    out.push_back(make("A5", "max |s| after predicted reach, d=1.5 d_m=1", escaped,
                       "> " + num(limit), "10x nominal band", escaped > limit));
    const bool sat = r.reach && r.reach->bound_satisfied.value_or(false);
    out.push_back(make("A5", "bound satisfied", sat ? 1.0 : 0.0, "false", "-", !sat));
  }

  // A6: unmatched compensation.
  {
    const RunResult with = execute(unmatched_config(0.5));
    const double band = with.chatter ? with.chatter->band_amplitude : INFINITY;
    out.push_back(make("A6", "band with w_uim=0.5", band, "<= 1e-3", "-", band <= 1e-3));

    const RunResult without = execute(unmatched_config(0.0));
    const double loose = without.chatter ? without.chatter->band_amplitude : INFINITY;
    out.push_back(make("A6", "band with w_uim=0", loose, ">= 5e-3", "5x", loose >= 5e-3));
  }
  return out;
}

std::vector<CriterionResult> gradients_suite() {
  std::vector<CriterionResult> out;
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  for (const auto& name : known_scenarios()) {
    ScenarioSpec spec{name, scenario_defaults(name), default_initial_state(name)};
    const Scenario sc = make_scenario(spec, DisturbanceSignal::zero());
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      Vector x(sc.surface.dimension);
      for (double& xi : x) xi = coord(rng);
      const StateVector state(x);
      const Vector analytic = surface_gradient(sc.surface, state);
      const Vector fd = surface_gradient_fd(sc.surface, state, 1e-5);
      Vector diff(analytic.size());
      for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = analytic[k] - fd[k];
      const double scale = std::max(max_abs(analytic), 1e-300);
      worst = std::max(worst, max_abs(diff) / scale);
    }
    out.push_back(make("A8", "gradient rel. error, " + name, worst, "0", "1e-6", worst <= 1e-6));
  }
  return out;
}

std::vector<CriterionResult> lyapunov_suite() {
  std::vector<CriterionResult> out;
  auto check = [&](const std::string& label, const RunConfig& cfg) {
    const RunResult r = execute(cfg);
    const bool ok = !r.error && r.lyapunov.violations == 0;
    out.push_back(make("A7", "V increases during reaching, " + label,
                       static_cast<double>(r.lyapunov.violations), "0",
                       "tol_V=" + num(r.tol_V), ok));
  };
  RunConfig pure = base_config("pure-integrator", {2.0}, 1.0);
  pure.integrator.t_end = 3.0;
  check("pure-integrator n=1 s0=2", pure);
  RunConfig neg = base_config("pure-integrator", {-3.0}, 2.0);
  neg.integrator.t_end = 3.0;
  check("pure-integrator n=2 s0=-3", neg);
  check("double-integrator d=0.8 sin 5t", matched_sinusoid_config());
  check("double-integrator unmatched, w_uim=0.5", unmatched_config(0.5));
  RunConfig pendulum = base_config("pendulum", {0.5, 0.2}, 1.0);
  pendulum.integrator.t_end = 3.0;
  check("pendulum n=1", pendulum);
  return out;
}

}  // namespace

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> names{"reaching", "disturbance", "gradients", "lyapunov",
                                              "all"};
  return names;
}

std::vector<CriterionResult> run_suite(const std::string& suite) {
  if (suite == "reaching") return reaching_suite();
  if (suite == "disturbance") return disturbance_suite();
  if (suite == "gradients") return gradients_suite();
  if (suite == "lyapunov") return lyapunov_suite();
  if (suite == "all") {
    std::vector<CriterionResult> all;
    for (const auto& name : {"reaching", "disturbance", "gradients", "lyapunov"}) {
      auto part = run_suite(name);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw ParameterError("unknown suite '" + suite +
                       "' (known: reaching, disturbance, gradients, lyapunov, all)");
}

void print_results(const std::vector<CriterionResult>& results, std::ostream& out) {
  char line[512];
  std::snprintf(line, sizeof line, "%-4s %-48s %-14s %-16s %-18s %s\n", "id", "criterion",
                "measured", "expected", "tolerance", "result");
  out << line;
  for (const auto& r : results) {
    std::snprintf(line, sizeof line, "%-4s %-48s %-14s %-16s %-18s %s\n", r.id.c_str(),
                  r.description.c_str(), r.measured.c_str(), r.expected.c_str(),
                  r.tolerance.c_str(), r.pass ? "PASS" : "FAIL");
    out << line;
  }
}

bool all_passed(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
}

}  // namespace smc
