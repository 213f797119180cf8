#pragma once

#include <optional>

#include "smc/dynamics.hpp"

namespace smc {

struct ControllerConfig {
  double n = 1.0;               // reaching gain
  double d_m = 0.0;             // bound on |d|
  double w_uim = 0.0;           // bound on |(ds/dx b)^-1 (ds/dx w_u)|
  double sing_tol = 1e-9;       // minimum admissible |ds/dx b|
  double boundary_layer = 0.0;  // 0 selects the pure sign function

  void validate() const;

  friend bool operator==(const ControllerConfig&, const ControllerConfig&) = default;
};

/// Everything the control law computed at one state. The contracted products
/// B = ds/dx.b, F = ds/dx.f and W = ds/dx.w_u are kept for diagnostics; u
/// never depends on W, only on the bound w_uim.
struct ControlDecision {
  double u = 0.0;
  double B = 0.0;
  double F = 0.0;
  double W = 0.0;
  double s = 0.0;
  double switching_term = 0.0;  // coefficient of sgn_eff(s)
  double d_g_term = 0.0;        // d_m sgn(s) sgn(B)
  double w_uig_term = 0.0;      // w_uim sgn(s) sgn(B)
};

struct ReachPrediction {
  double t_r = 0.0;
  double s0 = 0.0;
  double n = 1.0;
};

/// Slack in the reaching condition: m = -(s s' + n|s|), and m normalized by
/// |s||B| when that product is nonzero.
struct MarginReport {
  double m = 0.0;
  std::optional<double> rate;
};

// sgn(s), or the saturated s/boundary_layer when a boundary layer is set.
double switching_sign(const ControllerConfig& config, double s);

/// u = -F/B - [n/B + (d_m + w_uim) sgn(B)] sgn_eff(s)
///
/// Throws SingularSurfaceGain when |B| < sing_tol.
ControlDecision control(const ControllerConfig& config, const SystemModel& model,
                        const SlidingSurface& surface, const StateVector& x, double t);

/// Straight-line solution of s' = -n sgn(s), held at zero once reached.
double closed_form_s(double n, double s0, double t);
double reaching_time_predicted(double n, double s0);
ReachPrediction predict_reach(double n, double s0);

/// s s' + n|s| under the control law with the matched disturbance forced to
/// d_value. Nonpositive values certify the reaching condition.
double reaching_residual(const ControllerConfig& config, const SystemModel& model,
                         const SlidingSurface& surface, const StateVector& x, double t,
                         double d_value);

MarginReport margin_report(const ControllerConfig& config, const SystemModel& model,
                           const SlidingSurface& surface, const StateVector& x, double t,
                           double d_value);

}  // namespace smc
