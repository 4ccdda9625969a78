#include "leobf/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace leobf {

NoiseModel NoiseModel::from_config(const SystemConfig& cfg) {
  NoiseModel n;
  n.sigma2 = std::pow(10.0, (cfg.noise_psd_dbm_hz + cfg.noise_figure_db - 30.0) / 10.0) *
             cfg.subcarrier_spacing_hz;
  return n;
}

namespace {

double atmosphere_db(const SystemConfig& cfg, double ground_elevation_rad) {
  switch (cfg.atmosphere.mode) {
    case AtmosphereSpec::Mode::None:
      return 0.0;
    case AtmosphereSpec::Mode::Constant:
      return cfg.atmosphere.loss_db;
    case AtmosphereSpec::Mode::Zenith: {
      const double s = std::max(std::sin(ground_elevation_rad), 1e-3);
      return cfg.atmosphere.zenith_loss_db / s;
    }
  }
  return 0.0;
}

double scintillation_db(const SystemConfig& cfg, int s, int u) {
  switch (cfg.scintillation.mode) {
    case ScintillationSpec::Mode::None:
      return 0.0;
    case ScintillationSpec::Mode::Constant:
      return cfg.scintillation.loss_db;
    case ScintillationSpec::Mode::LogNormal: {
      Rng rng = Rng::stream(cfg.rng_seed, "scint", s, u);
      return rng.normal(0.0, cfg.scintillation.sigma_db);
    }
  }
  return 0.0;
}

}  // namespace

double path_loss_gamma(const SystemConfig& cfg, const Scenario& scn, int s,
                       int u, int k) {
  if (k < 0 || k >= cfg.num_subcarriers) {
    throw std::out_of_range("path_loss_gamma: subcarrier out of range");
  }
  const LinkGeometry geo = link_geometry(scn, s, u);
  const double f = cfg.flat_gamma
                       ? cfg.carrier_freq_hz
                       : cfg.carrier_freq_hz + k * cfg.subcarrier_spacing_hz;
  const double pl_fs =
      20.0 * std::log10(geo.distance_m) + 20.0 * std::log10(f) - 147.55;
  const double pl = pl_fs + atmosphere_db(cfg, geo.elevation_rad) +
                    scintillation_db(cfg, s, u);
  return std::pow(10.0, -pl / 10.0);
}

RicianStats rician_from_kappa(double kappa, double gamma) {
  RicianStats r;
  r.kappa = kappa;
  r.alpha_bar = std::sqrt(kappa * gamma / (2.0 * (1.0 + kappa)));
  r.beta = gamma / (2.0 * (1.0 + kappa));
  return r;
}

RicianStats rician_stats(const SystemConfig& cfg, int s, int u, double gamma) {
  Rng rng = Rng::stream(cfg.rng_seed, "rician", s, u);
  const double kappa_db = rng.uniform(cfg.rician_db_lo, cfg.rician_db_hi);
  return rician_from_kappa(std::pow(10.0, kappa_db / 10.0), gamma);
}

double radiation_gain(double aod_elevation_rad) {
  // cosine pattern about the boresight axis; elevation argument is from
  // the panel plane, so the off-boresight angle is pi/2 - elevation.
  return std::sqrt(3.0 / (4.0 * std::numbers::pi)) *
         std::cos(std::numbers::pi / 2.0 - aod_elevation_rad);
}

CVec steering_phases(const SystemConfig& cfg, double az, double el) {
  // Half-wavelength spacing: d / lambda = 1/2 exactly.
  const double phi_h = 0.5 * std::cos(az) * std::cos(el);
  const double phi_v = 0.5 * std::sin(az) * std::cos(el);
  const int nh = cfg.panel_nh, nv = cfg.panel_nv;
  CVec a(nh * nv);
  for (int ih = 0; ih < nh; ++ih) {
    for (int iv = 0; iv < nv; ++iv) {
      const double phase = -2.0 * std::numbers::pi * (phi_h * ih + phi_v * iv);
      a[ih * nv + iv] = cplx(std::cos(phase), std::sin(phase));
    }
  }
  return a;
}

CVec steering_vector(const SystemConfig& cfg, double az, double el) {
  return radiation_gain(el) * steering_phases(cfg, az, el);
}

cplx sample_alpha(double alpha_bar, double beta, Rng& rng) {
  const double sd = std::sqrt(beta);
  const double re = rng.normal(alpha_bar, sd);
  const double im = rng.normal(alpha_bar, sd);
  return cplx(re, im);
}

std::vector<int> evaluated_subcarriers(int num_subcarriers, int k_eval) {
  if (k_eval < 1 || k_eval > num_subcarriers) {
    throw std::invalid_argument("k_eval must be in [1, num_subcarriers]");
  }
  std::vector<int> ks(k_eval);
  for (int i = 0; i < k_eval; ++i) {
    ks[i] = static_cast<int>(static_cast<long long>(i) * num_subcarriers / k_eval);
  }
  return ks;
}

ChannelStats build_channel_stats(const SystemConfig& cfg, const Scenario& scn,
                                 int k_eval, Exec exec) {
  ChannelStats stats;
  stats.S = cfg.num_sats;
  stats.U = cfg.num_uts;
  stats.N = cfg.num_antennas();
  stats.subcarriers = evaluated_subcarriers(cfg.num_subcarriers, k_eval);
  stats.links.resize(static_cast<size_t>(stats.S) * stats.U);

  const int total = stats.S * stats.U;
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
  for (int idx = 0; idx < total; ++idx) {
    const int s = idx / stats.U;
    const int u = idx % stats.U;
    LinkChannel link;
    const int ke = static_cast<int>(stats.subcarriers.size());
    link.gamma.resize(ke);
    link.alpha_bar.resize(ke);
    link.beta.resize(ke);
    for (int i = 0; i < ke; ++i) {
      link.gamma[i] = path_loss_gamma(cfg, scn, s, u, stats.subcarriers[i]);
    }
    // One kappa per link; alpha_bar/beta inherit the per-k gamma.
    const RicianStats head = rician_stats(cfg, s, u, link.gamma[0]);
    link.kappa = head.kappa;
    for (int i = 0; i < ke; ++i) {
      const RicianStats r = rician_from_kappa(link.kappa, link.gamma[i]);
      link.alpha_bar[i] = r.alpha_bar;
      link.beta[i] = r.beta;
    }
    const LinkGeometry geo = link_geometry(scn, s, u);
    link.steering = steering_vector(cfg, geo.aod_azimuth_rad, geo.aod_elevation_rad);
    stats.links[idx] = std::move(link);
  }
  return stats;
}

}  // namespace leobf
