#pragma once

#include <map>
#include <string>
#include <vector>

#include "smc/controller.hpp"
#include "smc/dynamics.hpp"

namespace smc {

struct ScenarioSpec {
  std::string name = "pure-integrator";
  std::map<std::string, double> parameters;
  Vector initial_state;

  friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

struct Scenario {
  SystemModel model;
  SlidingSurface surface;
  // Upper bound on |ds/dx . b| over the state space.
  double gain_bound = 1.0;
  // Upper bound on |ds/dx . w_u| over the state space.
  double unmatched_gain_bound = 0.0;
};

const std::vector<std::string>& known_scenarios();
bool is_known_scenario(const std::string& name);

/// Parameters each scenario accepts, with their defaults.
std::map<std::string, double> scenario_defaults(const std::string& name);
Vector default_initial_state(const std::string& name);
std::size_t scenario_dimension(const std::string& name);

/// Builds the plant and surface. The unmatched signal enters the first state
/// equation only and must be zero for the one-state integrator.
///
///   pure-integrator     x' = u + d,                       s = x
///   double-integrator   x1' = x2 + w, x2' = u + d,        s = c x1 + x2
///   pendulum            x1' = x2 + w, x2' = -a sin x1 + u + d, s = c x1 + x2
Scenario make_scenario(const ScenarioSpec& spec, const DisturbanceSignal& matched,
                       const DisturbanceSignal& unmatched = DisturbanceSignal::zero());

/// Upper bound on |s'| under the control law, used to size bands and
/// Lyapunov tolerances: n + |B|max (d_m + w_uim + sup|d|) + sup|W|.
double reaching_rate_bound(const Scenario& scenario, const ControllerConfig& config);

}  // namespace smc
