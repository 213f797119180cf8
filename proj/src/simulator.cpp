#include "smc/simulator.hpp"

#include <cmath>
#include <limits>
#include <optional>

namespace smc {

const char* to_string(Method method) {
  return method == Method::Rk4 ? "rk4" : "explicit-euler";
}

Method method_from_string(const std::string& name) {
  if (name == "rk4") return Method::Rk4;
  if (name == "explicit-euler") return Method::ExplicitEuler;
  throw ParameterError("unknown integration method '" + name + "' (known: explicit-euler, rk4)");
}

void IntegratorConfig::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw ParameterError("step must be finite and > 0");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ParameterError("t_end must be finite and > 0");
  if (step > t_end) throw ParameterError("step must not exceed t_end");
  if (refine_iters < 1) throw ParameterError("refine_iters must be >= 1");
}

std::size_t IntegratorConfig::grid_samples() const {
  // Guards against t_end/step landing a hair below an integer.
  const double ratio = t_end / step;
  return static_cast<std::size_t>(std::floor(ratio * (1.0 + 1e-12))) + 1;
}

SimulationAborted::SimulationAborted(ErrorKind cause, const std::string& what, Trajectory partial)
    : Error(cause, what), cause_(cause), partial_(std::move(partial)) {}

DivergenceError::DivergenceError(const std::string& what, Trajectory partial)
    : SimulationAborted(ErrorKind::Divergence, what, std::move(partial)) {}

double lyapunov_of(double s) { return 0.25 * s * s; }

namespace {

class ClosedLoop {
 public:
  ClosedLoop(const SystemModel& model, const SlidingSurface& surface,
             const ControllerConfig& config)
      : model_(model), surface_(surface), config_(config) {}

  Vector rhs(const StateVector& x, double t) const {
    const double u = control(config_, model_, surface_, x, t).u;
    return eval_plant_derivative(model_, x, t, u);
  }

  StateVector advance(const StateVector& x, double t, double h, Method method) const {
    const std::size_t dim = x.dimension();
    const Vector& xv = x.vector();
    if (method == Method::ExplicitEuler) {
      const Vector k1 = rhs(x, t);
      Vector next(dim);
      for (std::size_t i = 0; i < dim; ++i) next[i] = xv[i] + h * k1[i];
      return StateVector(std::move(next));
    }
    auto offset = [&](const Vector& k, double scale) {
      Vector y(dim);
      for (std::size_t i = 0; i < dim; ++i) y[i] = xv[i] + scale * k[i];
      return StateVector(std::move(y));
    };
    const Vector k1 = rhs(x, t);
    const Vector k2 = rhs(offset(k1, 0.5 * h), t + 0.5 * h);
    const Vector k3 = rhs(offset(k2, 0.5 * h), t + 0.5 * h);
    const Vector k4 = rhs(offset(k3, h), t + h);
    Vector next(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      next[i] = xv[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return StateVector(std::move(next));
  }

  TrajectorySample sample(const StateVector& x, double t, bool refined) const {
    const ControlDecision decision = control(config_, model_, surface_, x, t);
    TrajectorySample out{t, x, decision.s, decision.u, lyapunov_of(decision.s),
                         model_.matched_disturbance.value(t),
                         max_abs(model_.unmatched_at(x, t)), refined};
    return out;
  }

  double s_of(const StateVector& x) const { return surface_value(surface_, x); }

 private:
  const SystemModel& model_;
  const SlidingSurface& surface_;
  const ControllerConfig& config_;
};

struct Refinement {
  double tau;
  StateVector x;
};

// Bisects the step length tau in (0, h) for a sign change of s.
std::optional<Refinement> refine_crossing(const ClosedLoop& loop, const StateVector& x0, double t0,
                                          double h, double s0, const IntegratorConfig& integ) {
  const double tol = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, x0.max_abs());
  double lo = 0.0;
  double hi = h;
  int sign_lo = sgn(s0);
  std::optional<Refinement> best;
  double best_abs = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < integ.refine_iters; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    StateVector xm = loop.advance(x0, t0, mid, integ.method);
    const double sm = loop.s_of(xm);
    if (std::abs(sm) < best_abs) {
      best_abs = std::abs(sm);
      best = Refinement{mid, xm};
    }
    if (std::abs(sm) <= tol) break;
    if (sgn(sm) == sign_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return best;
}

}  // namespace

Trajectory simulate(const SystemModel& model, const SlidingSurface& surface,
                    const ControllerConfig& config, const IntegratorConfig& integ,
                    const StateVector& x0) {
  config.validate();
  integ.validate();
  model.matched_disturbance.validate();

  Trajectory traj;
  traj.model_label = model.label;
  traj.surface_label = surface.description;
  traj.controller = config;
  traj.integrator = integ;

  const ClosedLoop loop(model, surface, config);
  const std::size_t grid = integ.grid_samples();
  traj.samples.reserve(grid + grid / 8);

  auto abort_with = [&](const Error& e) -> SimulationAborted {
    return SimulationAborted(e.kind(), e.what(), std::move(traj));
  };

  StateVector x = x0;
  try {
    traj.samples.push_back(loop.sample(x, 0.0, false));
  } catch (const Error& e) {
    throw abort_with(e);
  }

  for (std::size_t k = 0; k + 1 < grid; ++k) {
    const double t0 = static_cast<double>(k) * integ.step;
    const double t1 = static_cast<double>(k + 1) * integ.step;
    const double h = t1 - t0;
    try {
      StateVector next = loop.advance(x, t0, h, integ.method);
      const double s0 = traj.samples.back().s;
      const double s1 = loop.s_of(next);
      if (integ.crossing_refine && sgn(s0) * sgn(s1) < 0) {
        if (auto hit = refine_crossing(loop, x, t0, h, s0, integ)) {
          const double t_hit = t0 + hit->tau;
          if (t_hit > t0 && t_hit < t1) {
            traj.samples.push_back(loop.sample(hit->x, t_hit, true));
            next = loop.advance(hit->x, t_hit, t1 - t_hit, integ.method);
          }
        }
      }
      x = std::move(next);
      if (x.max_abs() > kDivergenceLimit) {
        throw DivergenceError("state max-norm exceeded 1e12 at t = " + std::to_string(t1),
                              std::move(traj));
      }
      traj.samples.push_back(loop.sample(x, t1, false));
    } catch (const SimulationAborted&) {
      throw;
    } catch (const Error& e) {
      throw abort_with(e);
    }
  }
  return traj;
}

Trajectory simulate_reaching_law(double n, double s0, const IntegratorConfig& integ) {
  SystemModel unit;
  unit.dimension = 1;
  unit.label = "reaching-law";
  unit.drift = [](const StateVector&, double) { return Vector{0.0}; };
  unit.input_vector = [](const StateVector&) { return Vector{1.0}; };

  SlidingSurface identity;
  identity.dimension = 1;
  identity.description = "s = x";
  identity.value = [](const StateVector& x) { return x[0]; };
  identity.gradient = [](const StateVector&) { return Vector{1.0}; };

  ControllerConfig config;
  config.n = n;
  return simulate(unit, identity, config, integ, StateVector{s0});
}

}  // namespace smc
