#include "smc/controller.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smc/errors.hpp"

namespace smc {

namespace {

void require_gain(double n) {
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw ParameterError("reaching gain n must be finite and > 0, got " + std::to_string(n));
  }
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw NumericsError(std::string(what) + " is not finite");
}

}  // namespace

void ControllerConfig::validate() const {
  require_gain(n);
  if (!(d_m >= 0.0) || !std::isfinite(d_m)) throw ParameterError("d_m must be finite and >= 0");
  if (!(w_uim >= 0.0) || !std::isfinite(w_uim)) throw ParameterError("w_uim must be finite and >= 0");
  if (!(sing_tol > 0.0) || !std::isfinite(sing_tol)) throw ParameterError("sing_tol must be > 0");
  if (!(boundary_layer >= 0.0) || !std::isfinite(boundary_layer)) {
    throw ParameterError("boundary_layer must be finite and >= 0");
  }
}

double switching_sign(const ControllerConfig& config, double s) {
  if (config.boundary_layer == 0.0) return sgn(s);
  return std::clamp(s / config.boundary_layer, -1.0, 1.0);
}

ControlDecision control(const ControllerConfig& config, const SystemModel& model,
                        const SlidingSurface& surface, const StateVector& x, double t) {
  config.validate();
  const Vector grad = surface_gradient(surface, x);
  const Vector f = model.drift_at(x, t);
  const Vector b = model.input_at(x);
  const Vector w = model.unmatched_at(x, t);

  ControlDecision out;
  out.s = surface_value(surface, x);
  out.B = dot(grad, b);
  out.F = dot(grad, f);
  out.W = dot(grad, w);
  require_finite(out.B, "ds/dx . b");
  require_finite(out.F, "ds/dx . f");

  if (!(std::abs(out.B) >= config.sing_tol)) {
    throw SingularSurfaceGain("|ds/dx . b| = " + std::to_string(std::abs(out.B)) +
                              " is below sing_tol = " + std::to_string(config.sing_tol));
  }

  const double sign_s = switching_sign(config, out.s);
  const int sign_b = sgn(out.B);
  out.switching_term = config.n / out.B + (config.d_m + config.w_uim) * sign_b;
  out.d_g_term = config.d_m * sign_s * sign_b;
  out.w_uig_term = config.w_uim * sign_s * sign_b;

  // Unfactored form: -B^-1 (n sgn(s) + F) - w_uig - d_g.
  out.u = -(config.n * sign_s + out.F) / out.B - out.w_uig_term - out.d_g_term;
  require_finite(out.u, "control signal");

  const double rearranged = -out.F / out.B - out.switching_term * sign_s;
  const double scale = std::abs(out.F / out.B) + std::abs(out.switching_term) + 1.0;
  if (std::abs(rearranged - out.u) > 1e-12 * scale) {
    throw NumericsError("control law reconstruction mismatch");
  }
  return out;
}

double closed_form_s(double n, double s0, double t) {
  require_gain(n);
  if (!(t >= 0.0)) throw ParameterError("closed_form_s needs t >= 0");
  if (t > std::abs(s0) / n) return 0.0;
  return -n * t * sgn(s0) + s0;
}

double reaching_time_predicted(double n, double s0) {
  require_gain(n);
  return std::abs(s0) / n;
}

ReachPrediction predict_reach(double n, double s0) {
  return {reaching_time_predicted(n, s0), s0, n};
}

double reaching_residual(const ControllerConfig& config, const SystemModel& model,
                         const SlidingSurface& surface, const StateVector& x, double t,
                         double d_value) {
  const ControlDecision decision = control(config, model, surface, x, t);
  const Vector xdot = eval_plant_derivative(model, x, t, decision.u, d_value);
  const double sdot = dot(surface_gradient(surface, x), xdot);
  return decision.s * sdot + config.n * std::abs(decision.s);
}

MarginReport margin_report(const ControllerConfig& config, const SystemModel& model,
                           const SlidingSurface& surface, const StateVector& x, double t,
                           double d_value) {
  const ControlDecision decision = control(config, model, surface, x, t);
  const Vector xdot = eval_plant_derivative(model, x, t, decision.u, d_value);
  const double sdot = dot(surface_gradient(surface, x), xdot);

  MarginReport report;
  report.m = -(decision.s * sdot + config.n * std::abs(decision.s));
  const double scale = std::abs(decision.s) * std::abs(decision.B);
  if (scale > 0.0) report.rate = report.m / scale;
  return report;
}

}  // namespace smc
