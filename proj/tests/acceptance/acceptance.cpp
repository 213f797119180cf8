// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Expected values come from oracles written here, not from the library.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "smc/analysis.hpp"
#include "smc/config.hpp"
#include "smc/runner.hpp"
#include "smc/scenarios.hpp"

using namespace smc;

namespace {

int failures = 0;

void report(const char* id, const std::string& what, bool pass, const std::string& detail) {
  std::printf("[%s] %-3s %-58s %s\n", pass ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  if (!pass) ++failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

// s(t) for s' = -n sgn(s): a line to zero, then zero.
double oracle_s(double n, double s0, double t) {
  const double t_r = std::abs(s0) / n;
  return t >= t_r ? 0.0 : s0 - std::copysign(n * t, s0);
}

double oracle_deviation(const Trajectory& traj, double n, double s0, double t_max) {
  double worst = 0.0;
  for (const auto& s : traj.samples) {
    if (s.t <= t_max) worst = std::max(worst, std::abs(s.s - oracle_s(n, s0, s.t)));
  }
  return worst;
}

RunConfig config_for(const std::string& scenario, Vector x0, double n, double t_end) {
  RunConfig cfg;
  cfg.scenario = {scenario, scenario_defaults(scenario), std::move(x0)};
  cfg.controller.n = n;
  cfg.integrator.method = Method::Rk4;
  cfg.integrator.step = 1e-4;
  cfg.integrator.t_end = t_end;
  cfg.eps_band = 1e-3;
  return cfg;
}

RunConfig matched_sinusoid() {
  RunConfig cfg = config_for("double-integrator", {1.0, 1.0}, 1.0, 10.0);
  cfg.controller.d_m = 1.0;
  cfg.disturbance = DisturbanceSignal::sinusoid(0.8, 5.0);
  return cfg;
}

// |w| <= 0.5 on x1'. n = 0.25 < sup|w|, so the uncompensated loop can be
// pushed off the surface.
RunConfig unmatched(double w_uim) {
  RunConfig cfg = config_for("double-integrator", {0.25, 0.0}, 0.25, 10.0);
  cfg.controller.w_uim = w_uim;
  cfg.unmatched = DisturbanceSignal::sinusoid(0.5, 2.0);
  return cfg;
}

// Discrete chattering band 2 step (n + |B| (d_m + w_uim + sup|d|)) with |B| = 1.
double nominal_band(const RunConfig& cfg) {
  return 2.0 * cfg.integrator.step *
         (cfg.controller.n + cfg.controller.d_m + cfg.controller.w_uim + cfg.disturbance.sup_abs());
}

void a1_reaching_time() {
  const RunResult r = execute(config_for("pure-integrator", {2.0}, 1.0, 3.0));
  const double t = r.reach->t_reach_measured.value_or(NAN);
  report("A1", "reach time n=1 s0=2 in [1.997, 2.003]", t >= 1.997 && t <= 2.003,
         fmt("measured %.6f, oracle %.1f", t, std::abs(2.0) / 1.0));

  const std::vector<double> gains{0.5, 1.0, 2.0, 4.0};
  const auto rows = sweep(config_for("pure-integrator", {2.0}, 1.0, 5.0), "controller.n", gains);
  for (std::size_t i = 0; i < gains.size(); ++i) {
    const double expected = 2.0 / gains[i];
    const double t_i = rows[i].t_reach.value_or(NAN);
    report("A1", fmt("sweep n=%g: reach time within 2e-3 of |s0|/n", gains[i]),
           std::abs(t_i - expected) <= 2e-3, fmt("measured %.6f, oracle %.4f", t_i, expected));
  }
}

void a2_closed_form() {
  IntegratorConfig integ;
  integ.step = 1e-4;
  integ.t_end = 3.0;
  for (auto [n, s0] : {std::pair{1.0, 2.0}, std::pair{2.0, -3.0}}) {
    const double dev = oracle_deviation(simulate_reaching_law(n, s0, integ), n, s0, 3.0);
    report("A2", fmt("max |s - closed form| <= 1e-3, n=%g s0=%g", n, s0), dev <= 1e-3,
           fmt("deviation %.3e", dev));
  }
  const Trajectory zero = simulate_reaching_law(1.0, 0.0, integ);
  double worst = 0.0;
  for (const auto& s : zero.samples) worst = std::max(worst, std::abs(s.s));
  report("A2", "s0=0 stays within step*n of 0", worst <= integ.step * 1.0,
         fmt("max |s| %.3e", worst));
}

// s' by hand from the scenario equations (s = c x1 + x2 or s = x).
double hand_sdot(const std::string& name, const RunConfig& cfg, const StateVector& x, double t,
                 double u, double d, const DisturbanceSignal& w) {
  if (name == "pure-integrator") return u + d;
  const double c = cfg.scenario.parameters.at("c");
  const double x2dot = (name == "pendulum" ? -cfg.scenario.parameters.at("a") * std::sin(x[0]) : 0.0) + u + d;
  return c * (x[1] + w.value(t)) + x2dot;
}

void a3_reaching_condition() {
  std::mt19937_64 rng(4282017);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  std::uniform_real_distribution<double> time(0.0, 10.0);
  for (const auto& name : known_scenarios()) {
    RunConfig cfg = config_for(name, default_initial_state(name), 1.0, 1.0);
    const bool two = name != "pure-integrator";
    const DisturbanceSignal w = two ? DisturbanceSignal::seeded_random(0.5, 10.0, 3) : DisturbanceSignal::zero();
    cfg.unmatched = w;
    cfg.controller.d_m = 1.0;
    // |B^-1 ds/dx w_u| = |c w| <= 0.5 with c = 1.
    cfg.controller.w_uim = w.sup_abs();
    const Scenario sc = build_scenario(cfg);
    std::uniform_real_distribution<double> dist(-cfg.controller.d_m, cfg.controller.d_m);

    ControllerConfig nominal;
    nominal.n = 1.0;
    const Scenario clean = make_scenario(cfg.scenario, DisturbanceSignal::zero());

    double worst = -INFINITY;
    double worst_nominal = 0.0;
    int taken = 0;
    while (taken < 1000) {
      Vector xv(sc.model.dimension);
      for (double& e : xv) e = coord(rng);
      const StateVector x(xv);
      const double s = surface_value(sc.surface, x);
      if (s == 0.0) continue;
      const double t = time(rng);
      const double d = dist(rng);
      const double u = control(cfg.controller, sc.model, sc.surface, x, t).u;
      worst = std::max(worst, s * hand_sdot(name, cfg, x, t, u, d, w) + cfg.controller.n * std::abs(s));

      const double u0 = control(nominal, clean.model, clean.surface, x, t).u;
      const double r0 = s * hand_sdot(name, cfg, x, t, u0, 0.0, DisturbanceSignal::zero()) + std::abs(s);
      worst_nominal = std::max(worst_nominal, std::abs(r0));
      ++taken;
    }
    report("A3", name + ": s s' + n|s| <= 1e-9 under bounded d, w_u", worst <= 1e-9,
           fmt("max residual %.3e", worst));
    report("A3", name + ": nominal |s s' + n|s|| <= 1e-12", worst_nominal <= 1e-12,
           fmt("max |residual| %.3e", worst_nominal));
  }
}

void a4_a5_matched() {
  const RunConfig ok = matched_sinusoid();
  const RunResult r = execute(ok);
  const bool sat = !r.error && r.reach && r.reach->bound_satisfied.value_or(false);
  report("A4", "d=0.8 sin 5t, d_m=1: reaching bound satisfied", sat,
         fmt("t_reach %.5f, predicted %.1f", r.reach->t_reach_measured.value_or(NAN),
             r.reach->t_r_predicted));
  const double band = r.chatter ? r.chatter->band_amplitude : INFINITY;
  report("A4", "post-reach band amplitude <= 1e-3", band <= 1e-3, fmt("band %.3e", band));

  RunConfig bad = matched_sinusoid();
  bad.disturbance = DisturbanceSignal::constant(1.5);
  const RunResult rb = execute(bad);
  const double t_pred = std::abs(rb.trajectory.samples.front().s) / bad.controller.n;
  double escaped = 0.0;
  for (const auto& s : rb.trajectory.samples) {
    if (s.t >= t_pred + 2.0 * bad.integrator.step) escaped = std::max(escaped, std::abs(s.s));
  }
  const double limit = 10.0 * nominal_band(bad);
  report("A5", "d=1.5, d_m=1: |s| after predicted reach > 10x band", escaped > limit,
         fmt("max |s| %.3e vs %.3e", escaped, limit));
  const bool bad_sat = rb.reach && rb.reach->bound_satisfied.value_or(false);
  report("A5", "d=1.5, d_m=1: reaching bound not satisfied", !bad_sat,
         fmt("t_reach %.4f, predicted %.1f", rb.reach->t_reach_measured.value_or(NAN), t_pred));
}

void a6_unmatched() {
  const RunResult with = execute(unmatched(0.5));
  const double band = with.chatter ? with.chatter->band_amplitude : INFINITY;
  report("A6", "|w| <= 0.5, w_uim=0.5: band <= 1e-3", band <= 1e-3, fmt("band %.3e", band));

  const RunResult without = execute(unmatched(0.0));
  const double loose = without.chatter ? without.chatter->band_amplitude : INFINITY;
  report("A6", "|w| <= 0.5, w_uim=0: band >= 5x 1e-3", loose >= 5e-3, fmt("band %.3e", loose));
}

void a7_lyapunov() {
  auto check = [](const std::string& label, const RunConfig& cfg) {
    const RunResult r = execute(cfg);
    // sup|s'| <= n + |B| (d_m + w_uim + sup|d|) + |c| sup|w|
    const double c = cfg.scenario.parameters.contains("c") ? cfg.scenario.parameters.at("c") : 0.0;
    const double rate = cfg.controller.n + cfg.controller.d_m + cfg.controller.w_uim +
                        cfg.disturbance.sup_abs() + std::abs(c) * cfg.unmatched.sup_abs();
    const double tol_V = 10.0 * cfg.integrator.step * rate * rate;
    const double t_reach = r.reach->t_reach_measured.value_or(INFINITY);
    std::size_t violations = 0;
    const auto& smp = r.trajectory.samples;
    for (std::size_t k = 0; k + 1 < smp.size() && smp[k + 1].t <= t_reach; ++k) {
      if (smp[k + 1].V > smp[k].V + tol_V) ++violations;
    }
    report("A7", "no V increase while reaching: " + label, !r.error && violations == 0,
           fmt("violations %.0f, tol_V %.2e", static_cast<double>(violations), tol_V));
  };
  check("pure n=1 s0=2", config_for("pure-integrator", {2.0}, 1.0, 3.0));
  check("pure n=2 s0=-3", config_for("pure-integrator", {-3.0}, 2.0, 3.0));
  check("double, d=0.8 sin 5t", matched_sinusoid());
  check("double, unmatched w_uim=0.5", unmatched(0.5));
  check("pendulum n=1", config_for("pendulum", {0.5, 0.2}, 1.0, 3.0));
}

void a8_gradients() {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  const double h = 1e-5;
  for (const auto& name : known_scenarios()) {
    const Scenario sc = make_scenario({name, scenario_defaults(name), {}}, DisturbanceSignal::zero());
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      Vector xv(sc.surface.dimension);
      for (double& e : xv) e = coord(rng);
      const Vector analytic = surface_gradient(sc.surface, StateVector(xv));
      double diff = 0.0;
      double scale = 0.0;
      for (std::size_t k = 0; k < xv.size(); ++k) {
        Vector plus = xv, minus = xv;
        plus[k] += h;
        minus[k] -= h;
        const double fd = (sc.surface.value(StateVector(plus)) - sc.surface.value(StateVector(minus))) / (2.0 * h);
        diff = std::max(diff, std::abs(fd - analytic[k]));
        scale = std::max(scale, std::abs(analytic[k]));
      }
      worst = std::max(worst, diff / scale);
    }
    report("A8", name + ": analytic vs central-difference gradient <= 1e-6", worst <= 1e-6,
           fmt("max rel. error %.3e", worst));
  }
}

void a9_order() {
  IntegratorConfig coarse;
  coarse.method = Method::ExplicitEuler;
  coarse.step = 1e-3;
  coarse.t_end = 3.0;
  IntegratorConfig fine = coarse;
  fine.step = 5e-4;
  const double dc = oracle_deviation(simulate_reaching_law(1.0, 2.0, coarse), 1.0, 2.0, 3.0);
  const double df = oracle_deviation(simulate_reaching_law(1.0, 2.0, fine), 1.0, 2.0, 3.0);
  const double ratio = dc / df;
  report("A9", "explicit Euler: halving step cuts deviation >= 1.8x", ratio >= 1.8,
         fmt("%.3e / %.3e", dc, df) + fmt(" = %.3f", ratio));
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::function<void()>> criteria{a1_reaching_time, a2_closed_form, a3_reaching_condition,
                                                    a4_a5_matched,    a6_unmatched,   a7_lyapunov,
                                                    a8_gradients,     a9_order};
  for (const auto& run : criteria) run();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s (%d failing, %.1f s)\n", failures == 0 ? "ALL CRITERIA PASSED" : "CRITERIA FAILED",
              failures, secs);
  return failures == 0 ? 0 : 1;
}
