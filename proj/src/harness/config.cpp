#include "smc/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "smc/analysis.hpp"
#include "smc/errors.hpp"

namespace smc {

using nlohmann::json;

namespace {

// Collects failures while walking the document so all of them can be
// reported together.
class Reader {
 public:
  std::vector<std::string> failures;

  void fail(const std::string& path, const std::string& msg) { failures.push_back(path + ": " + msg); }

  bool object(const json& parent, const std::string& key, const std::string& path) {
    if (!parent.contains(key)) return false;
    if (!parent.at(key).is_object()) {
      fail(path, "expected an object");
      return false;
    }
    return true;
  }

  void check_keys(const json& obj, const std::string& path, std::set<std::string> allowed) {
    for (const auto& [key, _] : obj.items()) {
      if (!allowed.contains(key)) fail(path.empty() ? key : path + "." + key, "unknown field");
    }
  }

  void number(const json& obj, const std::string& key, const std::string& path, double& out) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_number() || !std::isfinite(v.get<double>())) {
      fail(path, "expected a finite number");
      return;
    }
    out = v.get<double>();
  }

  void integer(const json& obj, const std::string& key, const std::string& path, int& out) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) {
      fail(path, "expected an integer");
      return;
    }
    out = v.get<int>();
  }

  void unsigned_integer(const json& obj, const std::string& key, const std::string& path,
                        std::uint64_t& out) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_number_unsigned()) {
      fail(path, "expected a nonnegative integer");
      return;
    }
    out = v.get<std::uint64_t>();
  }

  void boolean(const json& obj, const std::string& key, const std::string& path, bool& out) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_boolean()) {
      fail(path, "expected true or false");
      return;
    }
    out = v.get<bool>();
  }

  void string(const json& obj, const std::string& key, const std::string& path, std::string& out) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_string()) {
      fail(path, "expected a string");
      return;
    }
    out = v.get<std::string>();
  }

  void signal(const json& parent, const std::string& key, DisturbanceSignal& out) {
    if (!object(parent, key, key)) return;
    const json& obj = parent.at(key);
    check_keys(obj, key, {"kind", "amplitude", "frequency", "offset", "seed"});
    std::string kind = to_string(out.kind);
    string(obj, "kind", key + ".kind", kind);
    try {
      out.kind = signal_kind_from_string(kind);
    } catch (const ParameterError& e) {
      fail(key + ".kind", e.what());
    }
    number(obj, "amplitude", key + ".amplitude", out.amplitude);
    number(obj, "frequency", key + ".frequency", out.frequency);
    number(obj, "offset", key + ".offset", out.offset);
    unsigned_integer(obj, "seed", key + ".seed", out.seed);
    if (out.kind == SignalKind::SeededRandom && !(out.frequency > 0.0)) {
      fail(key + ".frequency", "seeded-random needs a knot rate > 0");
    }
  }
};

std::string scenario_list() {
  std::string out;
  for (const auto& n : known_scenarios()) out += (out.empty() ? "" : ", ") + n;
  return out;
}

}  // namespace

RunConfig parse_config(const json& doc) {
  Reader r;
  RunConfig cfg;
  if (!doc.is_object()) throw ConfigValidationError({"<root>: expected a JSON object"});
  r.check_keys(doc, "",
               {"scenario", "controller", "integrator", "disturbance", "unmatched", "eps_band",
                "output"});

  // scenario
  bool scenario_ok = false;
  if (!doc.contains("scenario")) {
    r.fail("scenario", "required");
  } else if (r.object(doc, "scenario", "scenario")) {
    const json& sc = doc.at("scenario");
    r.check_keys(sc, "scenario", {"name", "parameters", "initial_state"});
    if (!sc.contains("name")) {
      r.fail("scenario.name", "required (known: " + scenario_list() + ")");
    } else {
      r.string(sc, "name", "scenario.name", cfg.scenario.name);
      if (sc.at("name").is_string()) {
        if (is_known_scenario(cfg.scenario.name)) {
          scenario_ok = true;
        } else {
          r.fail("scenario.name",
                 "unknown scenario '" + cfg.scenario.name + "' (known: " + scenario_list() + ")");
        }
      }
    }
    if (scenario_ok) {
      const auto defaults = scenario_defaults(cfg.scenario.name);
      cfg.scenario.parameters = defaults;
      if (r.object(sc, "parameters", "scenario.parameters")) {
        for (const auto& [key, value] : sc.at("parameters").items()) {
          const std::string path = "scenario.parameters." + key;
          if (!defaults.contains(key)) {
            r.fail(path, "unknown parameter for " + cfg.scenario.name);
            continue;
          }
          r.number(sc.at("parameters"), key, path, cfg.scenario.parameters[key]);
        }
      }
      cfg.scenario.initial_state = default_initial_state(cfg.scenario.name);
      if (sc.contains("initial_state")) {
        const json& init = sc.at("initial_state");
        const std::size_t dim = scenario_dimension(cfg.scenario.name);
        if (!init.is_array() || init.size() != dim) {
          r.fail("scenario.initial_state",
                 "expected an array of " + std::to_string(dim) + " numbers");
        } else {
          for (std::size_t i = 0; i < dim; ++i) {
            if (!init[i].is_number() || !std::isfinite(init[i].get<double>())) {
              r.fail("scenario.initial_state." + std::to_string(i), "expected a finite number");
            } else {
              cfg.scenario.initial_state[i] = init[i].get<double>();
            }
          }
        }
      }
    }
  }

  // controller
  if (!doc.contains("controller")) {
    r.fail("controller.n", "required");
  } else if (r.object(doc, "controller", "controller")) {
    const json& c = doc.at("controller");
    r.check_keys(c, "controller", {"n", "d_m", "w_uim", "sing_tol", "boundary_layer"});
    if (!c.contains("n")) r.fail("controller.n", "required");
    r.number(c, "n", "controller.n", cfg.controller.n);
    r.number(c, "d_m", "controller.d_m", cfg.controller.d_m);
    r.number(c, "w_uim", "controller.w_uim", cfg.controller.w_uim);
    r.number(c, "sing_tol", "controller.sing_tol", cfg.controller.sing_tol);
    r.number(c, "boundary_layer", "controller.boundary_layer", cfg.controller.boundary_layer);
  }
  if (!(cfg.controller.n > 0.0)) r.fail("controller.n", "must be > 0");
  if (cfg.controller.d_m < 0.0) r.fail("controller.d_m", "must be >= 0");
  if (cfg.controller.w_uim < 0.0) r.fail("controller.w_uim", "must be >= 0");
  if (!(cfg.controller.sing_tol > 0.0)) r.fail("controller.sing_tol", "must be > 0");
  if (cfg.controller.boundary_layer < 0.0) r.fail("controller.boundary_layer", "must be >= 0");

  // integrator
  if (r.object(doc, "integrator", "integrator")) {
    const json& in = doc.at("integrator");
    r.check_keys(in, "integrator", {"method", "step", "t_end", "crossing_refine", "refine_iters"});
    std::string method = to_string(cfg.integrator.method);
    r.string(in, "method", "integrator.method", method);
    try {
      cfg.integrator.method = method_from_string(method);
    } catch (const ParameterError& e) {
      r.fail("integrator.method", e.what());
    }
    r.number(in, "step", "integrator.step", cfg.integrator.step);
    r.number(in, "t_end", "integrator.t_end", cfg.integrator.t_end);
    r.boolean(in, "crossing_refine", "integrator.crossing_refine", cfg.integrator.crossing_refine);
    r.integer(in, "refine_iters", "integrator.refine_iters", cfg.integrator.refine_iters);
  }
  if (!(cfg.integrator.step > 0.0)) r.fail("integrator.step", "must be > 0");
  if (!(cfg.integrator.t_end > 0.0)) r.fail("integrator.t_end", "must be > 0");
  if (cfg.integrator.step > cfg.integrator.t_end) r.fail("integrator.step", "must not exceed t_end");
  if (cfg.integrator.refine_iters < 1) r.fail("integrator.refine_iters", "must be >= 1");

  r.signal(doc, "disturbance", cfg.disturbance);
  r.signal(doc, "unmatched", cfg.unmatched);
  if (scenario_ok && cfg.scenario.name == "pure-integrator" &&
      cfg.unmatched.kind != SignalKind::Zero) {
    r.fail("unmatched.kind", "pure-integrator has no unmatched channel; use zero");
  }

  if (r.object(doc, "output", "output")) {
    const json& out = doc.at("output");
    r.check_keys(out, "output", {"dir", "stem"});
    r.string(out, "dir", "output.dir", cfg.output.dir);
    r.string(out, "stem", "output.stem", cfg.output.stem);
  }
  if (cfg.output.stem.empty()) r.fail("output.stem", "must not be empty");

  bool eps_given = false;
  if (doc.contains("eps_band")) {
    eps_given = true;
    r.number(doc, "eps_band", "eps_band", cfg.eps_band);
    if (!(cfg.eps_band > 0.0)) r.fail("eps_band", "must be > 0");
  }

  if (!r.failures.empty()) throw ConfigValidationError(r.failures);

  if (!eps_given) {
    const Scenario sc = build_scenario(cfg);
    cfg.eps_band = default_eps_band(cfg.integrator.step, reaching_rate_bound(sc, cfg.controller));
  }
  return cfg;
}

RunConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigSyntaxError(e.what());
  }
  return parse_config(doc);
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigSyntaxError("cannot open config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  RunConfig cfg = parse_config_text(buffer.str());
  const char* env = std::getenv(kSeedEnvVar);
  apply_seed_override(cfg, env ? std::optional<std::string>(env) : std::nullopt);
  return cfg;
}

namespace {

json signal_json(const DisturbanceSignal& s) {
  return {{"kind", to_string(s.kind)},
          {"amplitude", s.amplitude},
          {"frequency", s.frequency},
          {"offset", s.offset},
          {"seed", s.seed}};
}

}  // namespace

json to_json(const RunConfig& cfg) {
  json params = json::object();
  for (const auto& [k, v] : cfg.scenario.parameters) params[k] = v;
  return {
      {"scenario",
       {{"name", cfg.scenario.name}, {"parameters", params},
        {"initial_state", cfg.scenario.initial_state}}},
      {"controller",
       {{"n", cfg.controller.n},
        {"d_m", cfg.controller.d_m},
        {"w_uim", cfg.controller.w_uim},
        {"sing_tol", cfg.controller.sing_tol},
        {"boundary_layer", cfg.controller.boundary_layer}}},
      {"integrator",
       {{"method", to_string(cfg.integrator.method)},
        {"step", cfg.integrator.step},
        {"t_end", cfg.integrator.t_end},
        {"crossing_refine", cfg.integrator.crossing_refine},
        {"refine_iters", cfg.integrator.refine_iters}}},
      {"disturbance", signal_json(cfg.disturbance)},
      {"unmatched", signal_json(cfg.unmatched)},
      {"eps_band", cfg.eps_band},
      {"output", {{"dir", cfg.output.dir}, {"stem", cfg.output.stem}}},
  };
}

void write_config(const RunConfig& cfg, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write config file " + path.string());
  out << to_json(cfg).dump(2) << '\n';
}

void apply_seed_override(RunConfig& cfg, std::optional<std::string> env_value) {
  if (!env_value || env_value->empty()) return;
  std::uint64_t seed = 0;
  try {
    std::size_t used = 0;
    seed = std::stoull(*env_value, &used);
    if (used != env_value->size() || env_value->front() == '-') throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw ConfigValidationError({std::string(kSeedEnvVar) + ": expected a nonnegative integer"});
  }
  cfg.disturbance.seed = seed;
  cfg.unmatched.seed = seed;
}

RunConfig with_parameter(const RunConfig& cfg, const std::string& path, double value) {
  json doc = to_json(cfg);
  std::string pointer;
  std::stringstream ss(path);
  for (std::string part; std::getline(ss, part, '.');) pointer += "/" + part;
  json::json_pointer ptr;
  try {
    ptr = json::json_pointer(pointer);
  } catch (const json::exception&) {
    throw ConfigValidationError({path + ": not a valid parameter path"});
  }
  if (path.empty() || !doc.contains(ptr) || !doc.at(ptr).is_number()) {
    throw ConfigValidationError({path + ": does not address a numeric field"});
  }
  if (doc.at(ptr).is_number_integer() && value != std::floor(value)) {
    throw ConfigValidationError({path + ": integer field cannot take " + std::to_string(value)});
  }
  if (doc.at(ptr).is_number_integer()) {
    doc[ptr] = static_cast<std::int64_t>(value);
  } else {
    doc[ptr] = value;
  }
  // eps_band stays as configured unless it is the swept field.
  return parse_config(doc);
}

Scenario build_scenario(const RunConfig& cfg) {
  return make_scenario(cfg.scenario, cfg.disturbance, cfg.unmatched);
}

}  // namespace smc
