#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "seawalk/hamiltonian.hpp"
#include "seawalk/integrator.hpp"
#include "seawalk/sea.hpp"
#include "seawalk/state.hpp"
#include "seawalk/types.hpp"

namespace seawalk {

constexpr const char* kVersion = "0.1.0";

/// Every tunable of a single simulation run.  Defaults reproduce the
/// no-interaction SEA setup on the 11-site ring.
struct SimulationConfig {
  int n_sites = 11;
  double epsilon = 0.95;
  int init_site_i = 5;
  int init_site_j = 6;
  Regime regime;                       // NONE, strength 0
  EvolutionKind evolution = EvolutionKind::Sea;
  double tau_a = 1.0;
  double tau_b = 1.0;
  double dt = 1e-3;
  double t_max = 30.0;
  int stride = 100;
  int ma_window = 50;
  std::vector<double> snapshot_times;  // extra JPD snapshots besides 0, t_max
  double cutoff_eig = 1e-12;
  double cutoff_gram = 1e-12;
  double tol_trace = 1e-8;
  double tol_positivity = 1e-5;
  double tol_leakage = 1e-6;
  bool step_doubling_check = false;
  double step_doubling_tol = 1e-8;

  SeaParams sea_params() const {
    SeaParams p;
    p.tau_a = tau_a;
    p.tau_b = tau_b;
    p.cutoff_eig = cutoff_eig;
    p.cutoff_gram = cutoff_gram;
    return p;
  }

  IntegratorConfig integrator_config() const {
    IntegratorConfig c;
    c.dt = dt;
    c.t_max = t_max;
    c.stride = stride;
    c.tol.trace = tol_trace;
    c.tol.positivity = tol_positivity;
    c.tol.leakage = tol_leakage;
    c.step_doubling_check = step_doubling_check;
    c.step_doubling_tol = step_doubling_tol;
    return c;
  }

  InteractionParams interaction_params() const {
    return regime_alphas(regime, n_sites);
  }

  InitialStateSpec initial_state_spec() const {
    return InitialStateSpec{init_site_i, init_site_j, epsilon};
  }
};

namespace detail {

template <typename T>
T require_number(const nlohmann::json& j, const std::string& key) {
  if (!j.is_number())
    throw ConfigError("config key '" + key + "': expected a number");
  return j.get<T>();
}

inline void validate(const SimulationConfig& c) {
  const auto fail = [](const std::string& key, const std::string& msg) {
    throw ConfigError("config key '" + key + "': " + msg);
  };
  if (c.n_sites < 3) fail("n_sites", "need at least 3 ring sites");
  if (c.epsilon < 0.0 || c.epsilon > 1.0) fail("epsilon", "must lie in [0, 1]");
  if (c.init_site_i == c.init_site_j) fail("init_sites", "sites must be distinct");
  if (c.init_site_i < 0 || c.init_site_i >= c.n_sites ||
      c.init_site_j < 0 || c.init_site_j >= c.n_sites)
    fail("init_sites", "site index out of range");
  if (c.regime.strength < 0.0) fail("strength", "must be >= 0");
  if (c.tau_a <= 0.0) fail("tau_a", "must be > 0");
  if (c.tau_b <= 0.0) fail("tau_b", "must be > 0");
  if (c.dt <= 0.0) fail("dt", "must be > 0");
  if (c.t_max < 0.0) fail("t_max", "must be >= 0");
  if (c.stride < 1) fail("stride", "must be >= 1");
  if (c.ma_window < 1) fail("ma_window", "must be >= 1");
  if (c.cutoff_eig <= 0.0) fail("cutoff_eig", "must be > 0");
  if (c.cutoff_gram <= 0.0) fail("cutoff_gram", "must be > 0");
  for (double t : c.snapshot_times)
    if (t < 0.0 || t > c.t_max) fail("snapshot_times", "times must lie in [0, t_max]");
}

}  // namespace detail

/// Parse and validate a config document.  Unknown keys are errors; an empty
/// document yields all defaults.
inline SimulationConfig parse_config_json(const nlohmann::json& j) {
  static const std::set<std::string> known = {
      "n_sites", "epsilon", "init_sites", "regime", "strength",
      "fixed_hopping", "evolution", "tau_a", "tau_b", "dt", "t_max",
      "stride", "ma_window", "snapshot_times", "cutoff_eig", "cutoff_gram",
      "tol_trace", "tol_positivity", "tol_leakage", "step_doubling_check",
      "step_doubling_tol"};
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key()))
      throw ConfigError("unknown config key '" + it.key() + "'");

  SimulationConfig c;
  const auto get_double = [&](const char* key, double& out) {
    if (j.contains(key)) out = detail::require_number<double>(j.at(key), key);
  };
  const auto get_int = [&](const char* key, int& out) {
    if (j.contains(key)) {
      if (!j.at(key).is_number_integer())
        throw ConfigError(std::string("config key '") + key + "': expected an integer");
      out = j.at(key).get<int>();
    }
  };

  get_int("n_sites", c.n_sites);
  get_double("epsilon", c.epsilon);
  if (j.contains("init_sites")) {
    const auto& v = j.at("init_sites");
    if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
        !v[1].is_number_integer())
      throw ConfigError("config key 'init_sites': expected an array of two integers");
    c.init_site_i = v[0].get<int>();
    c.init_site_j = v[1].get<int>();
  }
  if (j.contains("regime")) {
    if (!j.at("regime").is_string())
      throw ConfigError("config key 'regime': expected a string");
    c.regime.kind = regime_from_string(j.at("regime").get<std::string>());
  }
  get_double("strength", c.regime.strength);
  get_double("fixed_hopping", c.regime.fixed_hopping);
  if (j.contains("evolution")) {
    if (!j.at("evolution").is_string())
      throw ConfigError("config key 'evolution': expected a string");
    c.evolution = evolution_from_string(j.at("evolution").get<std::string>());
  }
  get_double("tau_a", c.tau_a);
  get_double("tau_b", c.tau_b);
  get_double("dt", c.dt);
  get_double("t_max", c.t_max);
  get_int("stride", c.stride);
  get_int("ma_window", c.ma_window);
  if (j.contains("snapshot_times")) {
    const auto& v = j.at("snapshot_times");
    if (!v.is_array()) throw ConfigError("config key 'snapshot_times': expected an array");
    for (const auto& e : v)
      c.snapshot_times.push_back(detail::require_number<double>(e, "snapshot_times"));
  }
  get_double("cutoff_eig", c.cutoff_eig);
  get_double("cutoff_gram", c.cutoff_gram);
  get_double("tol_trace", c.tol_trace);
  get_double("tol_positivity", c.tol_positivity);
  get_double("tol_leakage", c.tol_leakage);
  if (j.contains("step_doubling_check")) {
    if (!j.at("step_doubling_check").is_boolean())
      throw ConfigError("config key 'step_doubling_check': expected a boolean");
    c.step_doubling_check = j.at("step_doubling_check").get<bool>();
  }
  get_double("step_doubling_tol", c.step_doubling_tol);

  detail::validate(c);
  return c;
}

inline SimulationConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return parse_config_json(nlohmann::json::object());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return parse_config_json(j);
}

/// Full echo of a config, used for the run manifest.
inline nlohmann::json config_to_json(const SimulationConfig& c) {
  nlohmann::json j;
  j["n_sites"] = c.n_sites;
  j["epsilon"] = c.epsilon;
  j["init_sites"] = {c.init_site_i, c.init_site_j};
  j["regime"] = to_string(c.regime.kind);
  j["strength"] = c.regime.strength;
  j["fixed_hopping"] = c.regime.fixed_hopping;
  j["evolution"] = to_string(c.evolution);
  j["tau_a"] = c.tau_a;
  j["tau_b"] = c.tau_b;
  j["dt"] = c.dt;
  j["t_max"] = c.t_max;
  j["stride"] = c.stride;
  j["ma_window"] = c.ma_window;
  j["snapshot_times"] = c.snapshot_times;
  j["cutoff_eig"] = c.cutoff_eig;
  j["cutoff_gram"] = c.cutoff_gram;
  j["tol_trace"] = c.tol_trace;
  j["tol_positivity"] = c.tol_positivity;
  j["tol_leakage"] = c.tol_leakage;
  j["step_doubling_check"] = c.step_doubling_check;
  j["step_doubling_tol"] = c.step_doubling_tol;
  return j;
}

}  // namespace seawalk
