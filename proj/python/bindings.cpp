#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "smc/config.hpp"
#include "smc/controller.hpp"
#include "smc/runner.hpp"
#include "smc/scenarios.hpp"
#include "smc/simulator.hpp"
#include "smc/verify.hpp"

namespace py = pybind11;
using namespace smc;

namespace {

py::dict trajectory_dict(const Trajectory& traj) {
  std::vector<double> t, s, u, V, d;
  std::vector<std::vector<double>> x;
  for (const auto& smp : traj.samples) {
    t.push_back(smp.t);
    x.push_back(smp.x.vector());
    s.push_back(smp.s);
    u.push_back(smp.u);
    V.push_back(smp.V);
    d.push_back(smp.d);
  }
  py::dict out;
  out["t"] = t;
  out["x"] = x;
  out["s"] = s;
  out["u"] = u;
  out["V"] = V;
  out["d"] = d;
  return out;
}

// Control decision at one state of a configured scenario.
py::dict control_at(const std::string& config_json, const std::vector<double>& x, double t) {
  const RunConfig cfg = parse_config_text(config_json);
  const Scenario sc = build_scenario(cfg);
  const ControlDecision cd = control(cfg.controller, sc.model, sc.surface, StateVector(x), t);
  py::dict out;
  out["u"] = cd.u;
  out["s"] = cd.s;
  out["B"] = cd.B;
  out["F"] = cd.F;
  out["W"] = cd.W;
  return out;
}

double residual_at(const std::string& config_json, const std::vector<double>& x, double t, double d) {
  const RunConfig cfg = parse_config_text(config_json);
  const Scenario sc = build_scenario(cfg);
  return reaching_residual(cfg.controller, sc.model, sc.surface, StateVector(x), t, d);
}

py::tuple run(const std::string& config_json) {
  const RunConfig cfg = parse_config_text(config_json);
  const RunResult r = execute(cfg);
  return py::make_tuple(report_to_json(cfg, r).dump(), trajectory_dict(r.trajectory));
}

py::list sweep_rows(const std::string& config_json, const std::string& param, const std::vector<double>& values) {
  py::list out;
  for (const auto& row : sweep(parse_config_text(config_json), param, values)) {
    py::dict d;
    d["value"] = row.value;
    d["t_reach"] = row.t_reach ? py::cast(*row.t_reach) : py::none();
    d["band_amplitude"] = row.band_amplitude ? py::cast(*row.band_amplitude) : py::none();
    d["bound_satisfied"] = row.bound_satisfied;
    out.append(d);
  }
  return out;
}

py::list suite(const std::string& name) {
  py::list out;
  for (const auto& c : run_suite(name)) {
    py::dict d;
    d["id"] = c.id;
    d["description"] = c.description;
    d["measured"] = c.measured;
    d["expected"] = c.expected;
    d["tolerance"] = c.tolerance;
    d["pass"] = c.pass;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sliding mode control simulation core";

  auto base = py::register_exception<Error>(m, "SmcError", PyExc_RuntimeError);
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<ParameterError>(m, "ParameterError", base.ptr());
  py::register_exception<NumericsError>(m, "NumericsError", base.ptr());
  py::register_exception<SingularSurfaceGain>(m, "SingularSurfaceGain", base.ptr());
  py::register_exception<DataError>(m, "DataError", base.ptr());
  py::register_exception<NotReachedError>(m, "NotReachedError", base.ptr());
  py::register_exception<ConfigSyntaxError>(m, "ConfigSyntaxError", base.ptr());
  py::register_exception<ConfigValidationError>(m, "ConfigValidationError", base.ptr());

  m.def("sgn", &sgn, py::arg("v"));
  m.def("closed_form_s", &closed_form_s, py::arg("n"), py::arg("s0"), py::arg("t"));
  m.def("reaching_time_predicted", &reaching_time_predicted, py::arg("n"), py::arg("s0"));
  m.def("lyapunov_of", &lyapunov_of, py::arg("s"));
  m.def("known_scenarios", &known_scenarios);
  m.def("scenario_defaults", &scenario_defaults, py::arg("name"));
  m.def("known_suites", &known_suites);

  m.def("_normalize_config", [](const std::string& text) { return to_json(parse_config_text(text)).dump(); });
  m.def("_control", &control_at);
  m.def("_residual", &residual_at);
  m.def("_run", &run);
  m.def("_sweep", &sweep_rows);
  m.def("_reaching_law", [](double n, double s0, double step, double t_end, const std::string& method) {
    IntegratorConfig integ;
    integ.method = method_from_string(method);
    integ.step = step;
    integ.t_end = t_end;
    return trajectory_dict(simulate_reaching_law(n, s0, integ));
  });
  m.def("_run_suite", &suite);
}
