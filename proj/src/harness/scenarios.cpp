#include "smc/scenarios.hpp"

#include <algorithm>
#include <cmath>

#include "smc/errors.hpp"

namespace smc {

const std::vector<std::string>& known_scenarios() {
  static const std::vector<std::string> names{"pure-integrator", "double-integrator", "pendulum"};
  return names;
}

bool is_known_scenario(const std::string& name) {
  const auto& names = known_scenarios();
  return std::find(names.begin(), names.end(), name) != names.end();
}

namespace {

std::string known_list() {
  std::string out;
  for (const auto& n : known_scenarios()) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

void require_known(const std::string& name) {
  if (!is_known_scenario(name)) {
    throw ParameterError("unknown scenario '" + name + "' (known: " + known_list() + ")");
  }
}

double param(const ScenarioSpec& spec, const std::string& key) {
  const auto defaults = scenario_defaults(spec.name);
  if (auto it = spec.parameters.find(key); it != spec.parameters.end()) return it->second;
  return defaults.at(key);
}

}  // namespace

std::map<std::string, double> scenario_defaults(const std::string& name) {
  require_known(name);
  if (name == "pure-integrator") return {};
  if (name == "double-integrator") return {{"c", 1.0}};
  return {{"a", 9.81}, {"c", 1.0}};
}

Vector default_initial_state(const std::string& name) {
  require_known(name);
  if (name == "pure-integrator") return {2.0};
  if (name == "double-integrator") return {1.0, 1.0};
  return {0.5, 0.2};
}

std::size_t scenario_dimension(const std::string& name) {
  require_known(name);
  return name == "pure-integrator" ? 1 : 2;
}

Scenario make_scenario(const ScenarioSpec& spec, const DisturbanceSignal& matched,
                       const DisturbanceSignal& unmatched) {
  require_known(spec.name);
  const auto defaults = scenario_defaults(spec.name);
  for (const auto& [key, value] : spec.parameters) {
    if (!defaults.contains(key)) {
      throw ParameterError("scenario '" + spec.name + "' has no parameter '" + key + "'");
    }
    if (!std::isfinite(value)) throw ParameterError("scenario parameter '" + key + "' not finite");
  }
  matched.validate();
  unmatched.validate();

  Scenario out;
  out.model.matched_disturbance = matched;
  out.model.label = spec.name;

  if (spec.name == "pure-integrator") {
    if (unmatched.kind != SignalKind::Zero) {
      throw ParameterError("pure-integrator has no unmatched channel");
    }
    out.model.dimension = 1;
    out.model.drift = [](const StateVector&, double) { return Vector{0.0}; };
    out.model.input_vector = [](const StateVector&) { return Vector{1.0}; };
    out.model.unmatched_bound = {0.0};
    out.surface.dimension = 1;
    out.surface.description = "s = x";
    out.surface.value = [](const StateVector& x) { return x[0]; };
    out.surface.gradient = [](const StateVector&) { return Vector{1.0}; };
    return out;
  }

  const double c = param(spec, "c");
  const double a = spec.name == "pendulum" ? param(spec, "a") : 0.0;

  out.model.dimension = 2;
  if (spec.name == "pendulum") {
    out.model.drift = [a](const StateVector& x, double) {
      return Vector{x[1], -a * std::sin(x[0])};
    };
  } else {
    out.model.drift = [](const StateVector& x, double) { return Vector{x[1], 0.0}; };
  }
  out.model.input_vector = [](const StateVector&) { return Vector{0.0, 1.0}; };
  if (unmatched.kind != SignalKind::Zero) {
    out.model.unmatched_disturbance = [unmatched](const StateVector&, double t) {
      return Vector{unmatched.value(t), 0.0};
    };
  }
  out.model.unmatched_bound = {unmatched.sup_abs(), 0.0};

  out.surface.dimension = 2;
  out.surface.description = "s = c*x1 + x2";
  out.surface.value = [c](const StateVector& x) { return c * x[0] + x[1]; };
  out.surface.gradient = [c](const StateVector&) { return Vector{c, 1.0}; };
  out.unmatched_gain_bound = std::abs(c) * unmatched.sup_abs();
  return out;
}

double reaching_rate_bound(const Scenario& scenario, const ControllerConfig& config) {
  return config.n +
         scenario.gain_bound *
             (config.d_m + config.w_uim + scenario.model.matched_disturbance.sup_abs()) +
         scenario.unmatched_gain_bound;
}

}  // namespace smc
