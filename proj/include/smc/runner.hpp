#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "smc/analysis.hpp"
#include "smc/config.hpp"
#include "smc/simulator.hpp"

namespace smc {

struct RunError {
  ErrorKind kind;
  std::string message;
};

struct RunResult {
  Trajectory trajectory;
  std::optional<ReachReport> reach;
  std::optional<ChatterReport> chatter;
  LyapunovReport lyapunov;
  double tol_V = 0.0;
  double rate_bound = 0.0;
  std::optional<RunError> error;
};

struct RunFiles {
  std::filesystem::path csv;
  std::filesystem::path report;
  RunResult result;
};

struct SweepRow {
  double value = 0.0;
  std::optional<double> t_reach;
  std::optional<double> band_amplitude;
  bool bound_satisfied = false;
};

/// Simulates and analyzes one configuration without touching the disk.
/// Simulator failures are captured in RunResult::error with the partial
/// trajectory kept.
RunResult execute(const RunConfig& cfg);

/// execute() plus <dir>/<stem>.csv and <dir>/<stem>.report.json.
RunFiles run_scenario(const RunConfig& cfg);

/// Independent runs, one per value; rows come back in input order.
std::vector<SweepRow> sweep(const RunConfig& cfg, const std::string& parameter,
                            const std::vector<double>& values);

// 17 significant digits, so doubles round-trip through text.
std::string format_double(double v);

void write_trajectory_csv(const Trajectory& traj, std::ostream& out);
nlohmann::json trajectory_to_json(const Trajectory& traj);
nlohmann::json report_to_json(const RunConfig& cfg, const RunResult& result);
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);

}  // namespace smc
