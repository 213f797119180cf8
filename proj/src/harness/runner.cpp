#include "smc/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <future>
#include <thread>

#include "smc/errors.hpp"

namespace smc {

using nlohmann::json;

RunResult execute(const RunConfig& cfg) {
  const Scenario scenario = build_scenario(cfg);
  RunResult result;
  result.rate_bound = reaching_rate_bound(scenario, cfg.controller);
  result.tol_V = 10.0 * cfg.integrator.step * result.rate_bound * result.rate_bound;

  try {
    result.trajectory = simulate(scenario.model, scenario.surface, cfg.controller, cfg.integrator,
                                 StateVector(cfg.scenario.initial_state));
  } catch (const SimulationAborted& e) {
    result.trajectory = e.partial();
    result.error = RunError{e.cause(), e.what()};
  }
  if (result.trajectory.empty()) return result;

  result.reach = verify_reaching_bound(result.trajectory, cfg.controller, cfg.eps_band).report;
  if (result.reach->t_reach_measured) {
    result.chatter = chattering_metrics(result.trajectory, *result.reach);
  }
  result.lyapunov = lyapunov_monotonicity(result.trajectory, result.tol_V, cfg.eps_band);
  return result;
}

RunFiles run_scenario(const RunConfig& cfg) {
  RunFiles files;
  const std::filesystem::path dir(cfg.output.dir);
  std::filesystem::create_directories(dir);
  files.csv = dir / (cfg.output.stem + ".csv");
  files.report = dir / (cfg.output.stem + ".report.json");

  files.result = execute(cfg);

  std::ofstream csv(files.csv);
  if (!csv) throw DataError("cannot write " + files.csv.string());
  write_trajectory_csv(files.result.trajectory, csv);

  std::ofstream report(files.report);
  if (!report) throw DataError("cannot write " + files.report.string());
  report << report_to_json(cfg, files.result).dump(2) << '\n';
  return files;
}

std::vector<SweepRow> sweep(const RunConfig& cfg, const std::string& parameter,
                            const std::vector<double>& values) {
  // Build every config up front so a bad path fails before any run starts.
  std::vector<RunConfig> configs;
  configs.reserve(values.size());
  for (double v : values) configs.push_back(with_parameter(cfg, parameter, v));

  auto one = [](const RunConfig& c, double value) {
    const RunResult r = execute(c);
    SweepRow row;
    row.value = value;
    if (r.reach) {
      row.t_reach = r.reach->t_reach_measured;
      row.bound_satisfied = r.reach->bound_satisfied.value_or(false);
    }
    if (r.chatter) row.band_amplitude = r.chatter->band_amplitude;
    return row;
  };

  std::vector<SweepRow> rows(values.size());
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t begin = 0; begin < configs.size(); begin += workers) {
    const std::size_t end = std::min(configs.size(), begin + workers);
    std::vector<std::future<SweepRow>> batch;
    for (std::size_t i = begin; i < end; ++i) {
      batch.push_back(std::async(std::launch::async, one, std::cref(configs[i]), values[i]));
    }
    for (std::size_t i = begin; i < end; ++i) rows[i] = batch[i - begin].get();
  }
  return rows;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
  const std::size_t dim = traj.dimension();
  out << "t";
  for (std::size_t i = 0; i < dim; ++i) out << ",x" << i;
  out << ",s,u,V,d,w_norm\n";
  for (const auto& sample : traj.samples) {
    out << format_double(sample.t);
    for (double xi : sample.x.values()) out << ',' << format_double(xi);
    out << ',' << format_double(sample.s) << ',' << format_double(sample.u) << ','
        << format_double(sample.V) << ',' << format_double(sample.d) << ','
        << format_double(sample.w_norm) << '\n';
  }
}

json trajectory_to_json(const Trajectory& traj) {
  json samples = json::array();
  for (const auto& s : traj.samples) {
    samples.push_back({{"t", s.t}, {"x", s.x.vector()}, {"s", s.s}, {"u", s.u}, {"V", s.V},
                       {"d", s.d}, {"w_norm", s.w_norm}});
  }
  return {{"model", traj.model_label}, {"surface", traj.surface_label}, {"samples", samples}};
}

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json report_to_json(const RunConfig& cfg, const RunResult& result) {
  json report;
  report["scenario"] = cfg.scenario.name;
  report["controller"] = to_json(cfg)["controller"];
  report["integrator"] = to_json(cfg)["integrator"];
  report["samples"] = result.trajectory.samples.size();
  if (result.reach) {
    report["reach"] = {
        {"t_reach_measured", optional_number(result.reach->t_reach_measured)},
        {"eps_band", result.reach->eps_band},
        {"t_r_predicted", result.reach->t_r_predicted},
        {"bound_satisfied", result.reach->bound_satisfied ? json(*result.reach->bound_satisfied)
                                                          : json(nullptr)}};
  } else {
    report["reach"] = nullptr;
  }
  if (result.chatter) {
    report["chatter"] = {{"band_amplitude", result.chatter->band_amplitude},
                         {"switch_count", result.chatter->switch_count},
                         {"mean_switch_freq", result.chatter->mean_switch_freq}};
  } else {
    report["chatter"] = nullptr;
  }
  report["lyapunov"] = {{"tol_V", result.tol_V},
                        {"violations", result.lyapunov.violations},
                        {"worst_excess", result.lyapunov.worst_excess}};
  if (result.error) {
    report["error"] = {{"kind", to_string(result.error->kind)},
                       {"message", result.error->message}};
  } else {
    report["error"] = nullptr;
  }
  return report;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "value,t_reach,band_amplitude,bound_satisfied\n";
  for (const auto& row : rows) {
    out << format_double(row.value) << ',';
    if (row.t_reach) out << format_double(*row.t_reach);
    out << ',';
    if (row.band_amplitude) out << format_double(*row.band_amplitude);
    out << ',' << (row.bound_satisfied ? "true" : "false") << '\n';
  }
}

}  // namespace smc
