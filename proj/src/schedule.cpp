#include "leobf/schedule.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace leobf {

BeamformerSet BeamformerSet::zeros(const Schedule& sched,
                                   const AnalogBeamformer& analog, int k_eval) {
  BeamformerSet bf;
  bf.S = sched.S;
  bf.U = sched.U;
  bf.K = k_eval;
  bf.W.reserve(static_cast<size_t>(bf.S) * k_eval);
  for (int s = 0; s < bf.S; ++s) {
    const int t = static_cast<int>(analog.F[s].cols());
    for (int k = 0; k < k_eval; ++k) bf.W.emplace_back(CMat::Zero(t, bf.U));
  }
  return bf;
}

double BeamformerSet::radiated_power(const AnalogBeamformer& analog, int s,
                                     int k) const {
  const CMat& w = at(s, k);
  return (w.adjoint() * analog.gram[s] * w).real().trace();
}

Schedule schedule_users(const Scenario& scn, const SystemConfig& cfg) {
  Schedule sched;
  sched.S = cfg.num_sats;
  sched.U = cfg.num_uts;
  sched.mask.assign(static_cast<size_t>(sched.S) * sched.U, 0);
  sched.served.resize(sched.S);
  const int T = cfg.num_served();
  for (int s = 0; s < sched.S; ++s) {
    std::vector<int> order(sched.U);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      const double da = (scn.ut_positions[a] - scn.sat_positions[s]).norm();
      const double db = (scn.ut_positions[b] - scn.sat_positions[s]).norm();
      return da < db;  // stable sort keeps the lower index on ties
    });
    order.resize(T);
    std::sort(order.begin(), order.end());
    sched.served[s] = order;
    for (int u : order) sched.mask[s * sched.U + u] = 1;
  }
  return sched;
}

AnalogBeamformer build_analog_beamformer(const Scenario& scn,
                                         const Schedule& sched,
                                         const SystemConfig& cfg) {
  AnalogBeamformer analog;
  const int N = cfg.num_antennas();
  analog.F.reserve(sched.S);
  analog.gram.reserve(sched.S);
  for (int s = 0; s < sched.S; ++s) {
    const int T = static_cast<int>(sched.served[s].size());
    CMat F(N, T);
    for (int t = 0; t < T; ++t) {
      const LinkGeometry geo = link_geometry(scn, s, sched.served[s][t]);
      F.col(t) = steering_phases(cfg, geo.aod_azimuth_rad, geo.aod_elevation_rad)
                     .conjugate();
    }
    analog.gram.push_back(F.adjoint() * F);
    analog.F.push_back(std::move(F));
  }
  return analog;
}

void effective_channels(ChannelStats& stats, const AnalogBeamformer& analog,
                        const Schedule& sched) {
  if (static_cast<int>(analog.F.size()) != stats.S || sched.U != stats.U) {
    throw std::invalid_argument("effective_channels: dimension mismatch");
  }
  for (int s = 0; s < stats.S; ++s) {
    for (int u = 0; u < stats.U; ++u) {
      LinkChannel& link = stats.at(s, u);
      link.g = analog.F[s].transpose() * link.steering;
    }
  }
}

}  // namespace leobf
