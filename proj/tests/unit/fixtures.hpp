#pragma once

#include <cmath>

#include "smc/dynamics.hpp"

namespace smc::test {

// x1' = x2 + w, x2' = u + d
inline SystemModel double_integrator(DisturbanceSignal d = {}) {
  SystemModel m;
  m.dimension = 2;
  m.label = "double-integrator";
  m.drift = [](const StateVector& x, double) { return Vector{x[1], 0.0}; };
  m.input_vector = [](const StateVector&) { return Vector{0.0, 1.0}; };
  m.matched_disturbance = d;
  m.unmatched_bound = {0.0, 0.0};
  return m;
}

inline SlidingSurface linear_surface() {
  SlidingSurface s;
  s.dimension = 2;
  s.description = "s = x1 + x2";
  s.value = [](const StateVector& x) { return x[0] + x[1]; };
  s.gradient = [](const StateVector&) { return Vector{1.0, 1.0}; };
  return s;
}

inline SlidingSurface quadratic_surface() {
  SlidingSurface s;
  s.dimension = 2;
  s.description = "s = x1^2 + x2";
  s.value = [](const StateVector& x) { return x[0] * x[0] + x[1]; };
  s.gradient = [](const StateVector& x) { return Vector{2.0 * x[0], 1.0}; };
  return s;
}

// Nonlinear surface used to exercise the gradient oracle off the scenarios.
inline SlidingSurface trig_surface() {
  SlidingSurface s;
  s.dimension = 2;
  s.description = "s = sin(x1) x2 + 0.1 x1^3";
  s.value = [](const StateVector& x) { return std::sin(x[0]) * x[1] + 0.1 * x[0] * x[0] * x[0]; };
  s.gradient = [](const StateVector& x) {
    return Vector{std::cos(x[0]) * x[1] + 0.3 * x[0] * x[0], std::sin(x[0])};
  };
  return s;
}

}  // namespace smc::test
