#include "leobf/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace leobf {

using nlohmann::json;

double SystemConfig::power_budget_w() const {
  return std::pow(10.0, (power_budget_dbm - 30.0) / 10.0);
}

double SystemConfig::wavelength_m() const {
  return 299792458.0 / carrier_freq_hz;
}

void SystemConfig::validate() const {
  auto fail = [](const std::string& key, const std::string& why) {
    throw ConfigError("config key '" + key + "': " + why);
  };
  if (num_subcarriers < 1) fail("num_subcarriers", "must be >= 1");
  if (num_sats < 1) fail("num_sats", "must be >= 1");
  if (num_uts < 1) fail("num_uts", "must be >= 1");
  if (num_rfc < 1) fail("num_rfc", "must be >= 1");
  if (panel_nh < 1) fail("panel_nh", "must be >= 1");
  if (panel_nv < 1) fail("panel_nv", "must be >= 1");
  if (!(carrier_freq_hz > 0)) fail("carrier_freq_hz", "must be > 0");
  if (!(subcarrier_spacing_hz > 0)) fail("subcarrier_spacing_hz", "must be > 0");
  if (!(earth_radius_m > 0)) fail("earth_radius_m", "must be > 0");
  if (!(orbit_height_m > 0)) fail("orbit_height_m", "must be > 0");
  if (!(service_area_radius_m > 0)) fail("service_area_radius_m", "must be > 0");
  if (sat_area_radius_m < 0) fail("sat_area_radius_m", "must be >= 0");
  if (rician_db_lo > rician_db_hi) fail("rician_db_lo", "must be <= rician_db_hi");
  if (!(solver.wmmse_tol > 0)) fail("solver.wmmse_tol", "must be > 0");
  if (solver.wmmse_max_iters < 1) fail("solver.wmmse_max_iters", "must be >= 1");
  if (!(solver.bisect_tol > 0)) fail("solver.bisect_tol", "must be > 0");
  if (solver.bcd_rounds < 1) fail("solver.bcd_rounds", "must be >= 1");
  if (!(solver.pdd_rho0 > 0)) fail("solver.pdd_rho0", "must be > 0");
  if (!(solver.pdd_delta > 1)) fail("solver.pdd_delta", "must be > 1");
  if (!(solver.pdd_q > 0) || !(solver.pdd_q < 1)) fail("solver.pdd_q", "must be in (0, 1)");
  if (!(solver.pdd_tol > 0)) fail("solver.pdd_tol", "must be > 0");
  if (solver.pdd_max_iters < 1) fail("solver.pdd_max_iters", "must be >= 1");
}

namespace {

[[noreturn]] void unknown_key(const std::string& scope, const std::string& key) {
  throw ConfigError("unknown config key '" + (scope.empty() ? key : scope + "." + key) + "'");
}

double as_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("config key '" + key + "': expected a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError("config key '" + key + "': expected an integer");
  return v.get<int>();
}

AtmosphereSpec parse_atmosphere(const json& j) {
  AtmosphereSpec spec;
  spec.mode = AtmosphereSpec::Mode::None;
  spec.zenith_loss_db = 0.0;
  bool mode_seen = false;
  for (const auto& [key, value] : j.items()) {
    if (key == "mode") {
      const std::string m = value.get<std::string>();
      if (m == "none") spec.mode = AtmosphereSpec::Mode::None;
      else if (m == "constant") spec.mode = AtmosphereSpec::Mode::Constant;
      else if (m == "zenith") spec.mode = AtmosphereSpec::Mode::Zenith;
      else throw ConfigError("config key 'atmosphere.mode': unknown mode '" + m + "'");
      mode_seen = true;
    } else if (key == "loss_db") {
      spec.loss_db = as_number(value, "atmosphere.loss_db");
    } else if (key == "zenith_loss_db") {
      spec.zenith_loss_db = as_number(value, "atmosphere.zenith_loss_db");
    } else {
      unknown_key("atmosphere", key);
    }
  }
  if (!mode_seen) throw ConfigError("config key 'atmosphere.mode': required");
  return spec;
}

ScintillationSpec parse_scintillation(const json& j) {
  ScintillationSpec spec;
  bool mode_seen = false;
  for (const auto& [key, value] : j.items()) {
    if (key == "mode") {
      const std::string m = value.get<std::string>();
      if (m == "none") spec.mode = ScintillationSpec::Mode::None;
      else if (m == "constant") spec.mode = ScintillationSpec::Mode::Constant;
      else if (m == "lognormal") spec.mode = ScintillationSpec::Mode::LogNormal;
      else throw ConfigError("config key 'scintillation.mode': unknown mode '" + m + "'");
      mode_seen = true;
    } else if (key == "loss_db") {
      spec.loss_db = as_number(value, "scintillation.loss_db");
    } else if (key == "sigma_db") {
      spec.sigma_db = as_number(value, "scintillation.sigma_db");
    } else {
      unknown_key("scintillation", key);
    }
  }
  if (!mode_seen) throw ConfigError("config key 'scintillation.mode': required");
  return spec;
}

SolverParams parse_solver(const json& j) {
  SolverParams p;
  for (const auto& [key, value] : j.items()) {
    if (key == "wmmse_tol") p.wmmse_tol = as_number(value, "solver.wmmse_tol");
    else if (key == "wmmse_max_iters") p.wmmse_max_iters = as_int(value, "solver.wmmse_max_iters");
    else if (key == "bisect_tol") p.bisect_tol = as_number(value, "solver.bisect_tol");
    else if (key == "bcd_rounds") p.bcd_rounds = as_int(value, "solver.bcd_rounds");
    else if (key == "pdd_rho0") p.pdd_rho0 = as_number(value, "solver.pdd_rho0");
    else if (key == "pdd_delta") p.pdd_delta = as_number(value, "solver.pdd_delta");
    else if (key == "pdd_q") p.pdd_q = as_number(value, "solver.pdd_q");
    else if (key == "pdd_tol") p.pdd_tol = as_number(value, "solver.pdd_tol");
    else if (key == "pdd_max_iters") p.pdd_max_iters = as_int(value, "solver.pdd_max_iters");
    else unknown_key("solver", key);
  }
  return p;
}

}  // namespace

SystemConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be an object");

  SystemConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "carrier_freq_hz") cfg.carrier_freq_hz = as_number(value, key);
    else if (key == "subcarrier_spacing_hz") cfg.subcarrier_spacing_hz = as_number(value, key);
    else if (key == "num_subcarriers") cfg.num_subcarriers = as_int(value, key);
    else if (key == "power_budget_dbm") cfg.power_budget_dbm = as_number(value, key);
    else if (key == "noise_psd_dbm_hz") cfg.noise_psd_dbm_hz = as_number(value, key);
    else if (key == "noise_figure_db") cfg.noise_figure_db = as_number(value, key);
    else if (key == "num_sats") cfg.num_sats = as_int(value, key);
    else if (key == "num_uts") cfg.num_uts = as_int(value, key);
    else if (key == "num_rfc") cfg.num_rfc = as_int(value, key);
    else if (key == "panel_nh") cfg.panel_nh = as_int(value, key);
    else if (key == "panel_nv") cfg.panel_nv = as_int(value, key);
    else if (key == "earth_radius_m") cfg.earth_radius_m = as_number(value, key);
    else if (key == "orbit_height_m") cfg.orbit_height_m = as_number(value, key);
    else if (key == "service_area_radius_m") cfg.service_area_radius_m = as_number(value, key);
    else if (key == "sat_area_radius_m") cfg.sat_area_radius_m = as_number(value, key);
    else if (key == "rician_db_lo") cfg.rician_db_lo = as_number(value, key);
    else if (key == "rician_db_hi") cfg.rician_db_hi = as_number(value, key);
    else if (key == "atmosphere") cfg.atmosphere = parse_atmosphere(value);
    else if (key == "scintillation") cfg.scintillation = parse_scintillation(value);
    else if (key == "flat_gamma") cfg.flat_gamma = value.get<bool>();
    else if (key == "rng_seed") cfg.rng_seed = value.get<uint64_t>();
    else if (key == "solver") cfg.solver = parse_solver(value);
    else unknown_key("", key);
  }
  cfg.validate();
  return cfg;
}

SystemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace leobf
