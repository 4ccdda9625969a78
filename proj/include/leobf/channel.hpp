#pragma once

#include <vector>

#include "leobf/config.hpp"
#include "leobf/rng.hpp"
#include "leobf/scenario.hpp"
#include "leobf/types.hpp"

namespace leobf {

// Statistical CSI of one satellite-UT link. Per-subcarrier arrays follow
// the evaluated subcarrier subset of the owning ChannelStats.
struct LinkChannel {
  double kappa = 0;      // linear Rician factor, one draw per link
  RVec gamma;            // large-scale power per evaluated subcarrier
  RVec alpha_bar;        // per-component mean of the composite gain
  RVec beta;             // per-component variance
  CVec steering;         // length N, radiation gain included
  CVec g;                // effective channel through the analog stage (T_s)
};

struct ChannelStats {
  int S = 0, U = 0, N = 0;
  std::vector<int> subcarriers;  // absolute indices evaluated
  std::vector<LinkChannel> links;

  int k_eval() const { return static_cast<int>(subcarriers.size()); }
  LinkChannel& at(int s, int u) { return links[s * U + u]; }
  const LinkChannel& at(int s, int u) const { return links[s * U + u]; }
};

struct NoiseModel {
  double sigma2 = 0;  // linear noise power per subcarrier
  static NoiseModel from_config(const SystemConfig& cfg);
};

// Large-scale linear gain of link (s,u) on absolute subcarrier k (Friis
// free-space term plus configured atmosphere/scintillation).
double path_loss_gamma(const SystemConfig& cfg, const Scenario& scn, int s,
                       int u, int k);

struct RicianStats {
  double kappa = 0, alpha_bar = 0, beta = 0;
};

// kappa_dB uniform in [lo, hi] from the (seed, s, u) sub-stream.
RicianStats rician_stats(const SystemConfig& cfg, int s, int u, double gamma);
RicianStats rician_from_kappa(double kappa, double gamma);

// Radiation (amplitude) gain of the panel toward an AoD given by its
// elevation from the panel plane; maximal at boresight.
double radiation_gain(double aod_elevation_rad);

// Unit-modulus array phases, no gain.
CVec steering_phases(const SystemConfig& cfg, double aod_azimuth_rad,
                     double aod_elevation_rad);
// Full steering vector including the radiation gain.
CVec steering_vector(const SystemConfig& cfg, double aod_azimuth_rad,
                     double aod_elevation_rad);

// One draw of the composite channel gain: real and imaginary parts i.i.d.
// Normal(alpha_bar, beta).
cplx sample_alpha(double alpha_bar, double beta, Rng& rng);

// The evenly spaced subset of k_eval subcarriers used by desk-scale runs.
std::vector<int> evaluated_subcarriers(int num_subcarriers, int k_eval);

// Builds all link statistics for the given subcarrier subset. The parallel
// path is bit-identical to the serial reference.
ChannelStats build_channel_stats(const SystemConfig& cfg, const Scenario& scn,
                                 int k_eval, Exec exec = Exec::Parallel);

}  // namespace leobf
