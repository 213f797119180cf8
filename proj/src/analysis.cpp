#include "smc/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "smc/errors.hpp"

namespace smc {

ReachReport measure_reaching_time(const Trajectory& traj, double eps_band) {
  if (!(eps_band > 0.0)) throw ParameterError("eps_band must be > 0");
  if (traj.empty()) throw DataError("cannot measure reaching time of an empty trajectory");

  ReachReport report;
  report.eps_band = eps_band;
  report.t_r_predicted = reaching_time_predicted(traj.controller.n, traj.samples.front().s);

  const auto& samples = traj.samples;
  std::size_t run = 0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    if (std::abs(samples[k].s) <= eps_band) {
      ++run;
      const bool at_end = k + 1 == samples.size();
      if (run >= kReachPersistence || at_end) {
        report.t_reach_measured = samples[k + 1 - run].t;
        break;
      }
    } else {
      run = 0;
    }
  }
  const double deadline = report.t_r_predicted + 2.0 * traj.integrator.step;
  if (report.t_reach_measured) {
    report.bound_satisfied = *report.t_reach_measured <= deadline;
  } else if (samples.back().t > deadline) {
    report.bound_satisfied = false;
  }
  return report;
}

ChatterReport chattering_metrics(const Trajectory& traj, const ReachReport& reach) {
  if (!reach.t_reach_measured) throw NotReachedError("sliding surface was never reached");
  const double t_reach = *reach.t_reach_measured;

  // The window opens where the approach ends, at or after the measured reach:
  // the surface is hit (a zero or a sign change) or |s| stops shrinking. The
  // final approach inside the band does not count as chattering.
  const auto& samples = traj.samples;
  std::size_t first = 0;
  while (first < samples.size() && samples[first].t < t_reach) ++first;
  std::size_t start = first;
  for (std::size_t k = first; k < samples.size(); ++k) {
    const bool hit = samples[k].s == 0.0 ||
                     (k > 0 && sgn(samples[k].s) * sgn(samples[k - 1].s) < 0) ||
                     (k + 1 < samples.size() && std::abs(samples[k + 1].s) >= std::abs(samples[k].s));
    if (hit) {
      start = k;
      break;
    }
  }

  ChatterReport report;
  if (start == samples.size()) return report;
  int last_sign = 0;
  const double t_start = samples[start].t;
  double t_last = t_start;
  for (std::size_t k = start; k < samples.size(); ++k) {
    const auto& sample = samples[k];
    report.band_amplitude = std::max(report.band_amplitude, std::abs(sample.s));
    const int sign = sgn(sample.s);
    if (sign != 0) {
      if (last_sign != 0 && sign != last_sign) ++report.switch_count;
      last_sign = sign;
    }
    t_last = sample.t;
  }
  const double elapsed = t_last - t_start;
  if (elapsed > 0.0) report.mean_switch_freq = static_cast<double>(report.switch_count) / elapsed;
  return report;
}

BoundCheck verify_reaching_bound(const Trajectory& traj, const ControllerConfig& config,
                                 double eps_band) {
  BoundCheck check;
  check.report = measure_reaching_time(traj, eps_band);
  check.report.t_r_predicted = reaching_time_predicted(config.n, traj.samples.front().s);
  const double deadline = check.report.t_r_predicted + 2.0 * traj.integrator.step;
  if (check.report.t_reach_measured) {
    check.satisfied = *check.report.t_reach_measured <= deadline;
    check.report.bound_satisfied = check.satisfied;
  } else if (traj.samples.back().t > deadline) {
    check.report.bound_satisfied = false;
  } else {
    check.report.bound_satisfied.reset();
  }
  return check;
}

LyapunovReport lyapunov_monotonicity(const Trajectory& traj, double tol_V, double eps_band) {
  if (!(tol_V > 0.0)) throw ParameterError("tol_V must be > 0");
  LyapunovReport report;
  if (traj.samples.size() < 2) return report;

  const ReachReport reach = measure_reaching_time(traj, eps_band);
  const double cutoff = reach.t_reach_measured.value_or(traj.samples.back().t);
  for (std::size_t k = 0; k + 1 < traj.samples.size(); ++k) {
    const auto& a = traj.samples[k];
    const auto& b = traj.samples[k + 1];
    if (b.t > cutoff) break;
    const double excess = b.V - (a.V + tol_V);
    if (excess > 0.0) {
      ++report.violations;
      report.worst_excess = std::max(report.worst_excess, excess);
    }
  }
  return report;
}

double compare_closed_form(const Trajectory& traj, double n, double s0) {
  double worst = 0.0;
  for (const auto& sample : traj.samples) {
    worst = std::max(worst, std::abs(sample.s - closed_form_s(n, s0, sample.t)));
  }
  return worst;
}

double max_abs_s_after(const Trajectory& traj, double t_from) {
  double worst = 0.0;
  for (const auto& sample : traj.samples) {
    if (sample.t >= t_from) worst = std::max(worst, std::abs(sample.s));
  }
  return worst;
}

double default_eps_band(double step, double rate_bound) {
  return std::max(1e-3, 4.0 * step * rate_bound);
}

}  // namespace smc
