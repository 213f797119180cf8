#pragma once

#include <cstddef>
#include <optional>

#include "smc/controller.hpp"
#include "smc/simulator.hpp"

namespace smc {

// Samples that must stay inside the band for a reach to count.
inline constexpr std::size_t kReachPersistence = 10;

struct ReachReport {
  std::optional<double> t_reach_measured;
  double eps_band = 1e-3;
  double t_r_predicted = 0.0;
  // t_reach_measured <= t_r_predicted + 2 step; empty when never reached.
  std::optional<bool> bound_satisfied;
};

/// Measured from the first surface hit (zero or sign change of s) at or
/// after the measured reach time.
struct ChatterReport {
  double band_amplitude = 0.0;  // max |s| in the window
  std::size_t switch_count = 0;
  double mean_switch_freq = 0.0;
};

struct LyapunovReport {
  std::size_t violations = 0;
  double worst_excess = 0.0;
};

struct BoundCheck {
  bool satisfied = false;
  ReachReport report;
};

/// First time |s| enters [0, eps_band] and stays there for kReachPersistence
/// samples (or until the end of the run). The prediction uses |s| at the
/// first sample and the gain recorded in the trajectory.
ReachReport measure_reaching_time(const Trajectory& traj, double eps_band);

ChatterReport chattering_metrics(const Trajectory& traj, const ReachReport& reach);

BoundCheck verify_reaching_bound(const Trajectory& traj, const ControllerConfig& config,
                                 double eps_band);

/// Counts consecutive pairs before reach with V[k+1] > V[k] + tol_V. Reach is
/// detected with eps_band; an unreached run is checked over its full length.
LyapunovReport lyapunov_monotonicity(const Trajectory& traj, double tol_V, double eps_band = 1e-3);

double compare_closed_form(const Trajectory& traj, double n, double s0);

/// Largest |s| among samples with t >= t_from (0 when there are none).
double max_abs_s_after(const Trajectory& traj, double t_from);

// max(1e-3, 4 step rate_bound)
double default_eps_band(double step, double rate_bound);

}  // namespace smc
