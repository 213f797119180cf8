#pragma once

#include <string>
#include <vector>

#include "smc/controller.hpp"
#include "smc/dynamics.hpp"
#include "smc/errors.hpp"

namespace smc {

enum class Method { ExplicitEuler, Rk4 };

const char* to_string(Method method);
Method method_from_string(const std::string& name);

struct IntegratorConfig {
  Method method = Method::Rk4;
  double step = 1e-4;
  double t_end = 10.0;
  bool crossing_refine = true;
  int refine_iters = 50;

  void validate() const;
  // Number of regular grid samples, floor(t_end/step) + 1.
  std::size_t grid_samples() const;

  friend bool operator==(const IntegratorConfig&, const IntegratorConfig&) = default;
};

struct TrajectorySample {
  double t = 0.0;
  StateVector x{0.0};
  double s = 0.0;
  double u = 0.0;
  double V = 0.0;  // 0.25 s^2
  double d = 0.0;
  double w_norm = 0.0;
  bool refined = false;  // inserted by crossing refinement, off the regular grid
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  std::string model_label;
  std::string surface_label;
  ControllerConfig controller;
  IntegratorConfig integrator;

  bool empty() const noexcept { return samples.empty(); }
  std::size_t dimension() const { return samples.empty() ? 0 : samples.front().x.dimension(); }
};

/// Raised when a run stops early. The samples computed up to the failure
/// are attached; cause() says which check tripped.
class SimulationAborted : public Error {
 public:
  SimulationAborted(ErrorKind cause, const std::string& what, Trajectory partial);

  ErrorKind cause() const noexcept { return cause_; }
  const Trajectory& partial() const noexcept { return partial_; }

 private:
  ErrorKind cause_;
  Trajectory partial_;
};

// State max-norm exceeded kDivergenceLimit.
class DivergenceError : public SimulationAborted {
 public:
  DivergenceError(const std::string& what, Trajectory partial);
};

inline constexpr double kDivergenceLimit = 1e12;

double lyapunov_of(double s);

/// Fixed-step closed-loop integration. The control is re-evaluated at every
/// integrator stage. With crossing_refine set, a step across which s changes
/// sign is bisected on its length to locate s ~ 0; that point is recorded and
/// integration continues from it to the next grid time.
Trajectory simulate(const SystemModel& model, const SlidingSurface& surface,
                    const ControllerConfig& config, const IntegratorConfig& integ,
                    const StateVector& x0);

/// Integrates s' = -n sgn(s) directly (unit plant x' = u, s = x).
Trajectory simulate_reaching_law(double n, double s0, const IntegratorConfig& integ);

}  // namespace smc
