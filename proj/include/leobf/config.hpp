#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace leobf {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Atmospheric absorption: either a constant per-link dB value or a
// zenith-loss / sin(elevation) approximation.
struct AtmosphereSpec {
  enum class Mode { None, Constant, Zenith };
  Mode mode = Mode::Zenith;
  double loss_db = 0.0;        // Constant mode
  double zenith_loss_db = 0.5; // Zenith mode
};

// Tropospheric scintillation: constant dB or a log-normal draw per link.
struct ScintillationSpec {
  enum class Mode { None, Constant, LogNormal };
  Mode mode = Mode::None;
  double loss_db = 0.0;  // Constant mode
  double sigma_db = 0.0; // LogNormal mode
};

struct SolverParams {
  double wmmse_tol = 1e-4;
  int wmmse_max_iters = 100;
  double bisect_tol = 1e-9;
  int bcd_rounds = 3;
  double pdd_rho0 = 1.0;
  double pdd_delta = 2.0;
  double pdd_q = 0.9;
  double pdd_tol = 1e-6;
  int pdd_max_iters = 200;
};

struct SystemConfig {
  double carrier_freq_hz = 12.7e9;
  double subcarrier_spacing_hz = 120e3;
  int num_subcarriers = 1024;
  double power_budget_dbm = 50.0;   // per satellite
  double noise_psd_dbm_hz = -173.855;
  double noise_figure_db = 10.0;
  int num_sats = 4;
  int num_uts = 16;
  int num_rfc = 8;
  int panel_nh = 16;
  int panel_nv = 16;
  double earth_radius_m = 6.4e6;
  double orbit_height_m = 5e5;
  double service_area_radius_m = 2e5; // arc radius on the Earth sphere
  double sat_area_radius_m = 2e5;     // arc radius on the orbit sphere
  double rician_db_lo = 15.0;
  double rician_db_hi = 20.0;
  AtmosphereSpec atmosphere;
  ScintillationSpec scintillation;
  bool flat_gamma = false; // evaluate path loss at f_c only
  uint64_t rng_seed = 1;
  SolverParams solver;

  int num_antennas() const { return panel_nh * panel_nv; }
  // Streams served per satellite; derived, never stored.
  int num_served() const { return num_uts < num_rfc ? num_uts : num_rfc; }
  double power_budget_w() const;
  double wavelength_m() const;

  // Throws ConfigError naming the offending key.
  void validate() const;
};

// Parses a JSON config file. Unknown keys are an error; omitted keys take
// the defaults above.
SystemConfig load_config(const std::string& path);
SystemConfig parse_config(const std::string& json_text);

}  // namespace leobf
