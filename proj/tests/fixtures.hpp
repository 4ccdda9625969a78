#pragma once

#include "leobf/baselines.hpp"
#include "leobf/channel.hpp"
#include "leobf/scenario.hpp"
#include "leobf/schedule.hpp"

// Shared end-to-end fixtures: a generated scenario with statistics, schedule
// and analog stage ready for beamforming.
namespace leobf::fixtures {

struct Desk {
  SystemConfig cfg;
  Scenario scn;
  ChannelStats stats;
  Schedule sched;
  AnalogBeamformer analog;
  NoiseModel noise;
  double budget = 0;  // per subcarrier
};

inline Desk make_desk(int S, int U, int nrf, int nh, int nv, uint64_t seed,
                      int k_eval = 1) {
  Desk d;
  d.cfg.num_sats = S;
  d.cfg.num_uts = U;
  d.cfg.num_rfc = nrf;
  d.cfg.panel_nh = nh;
  d.cfg.panel_nv = nv;
  d.cfg.rng_seed = seed;
  d.scn = generate_scenario(d.cfg);
  d.stats = build_channel_stats(d.cfg, d.scn, k_eval, Exec::Serial);
  d.sched = schedule_users(d.scn, d.cfg);
  d.analog = build_analog_beamformer(d.scn, d.sched, d.cfg);
  effective_channels(d.stats, d.analog, d.sched);
  d.noise = NoiseModel::from_config(d.cfg);
  d.budget = d.cfg.power_budget_w() / d.cfg.num_subcarriers;
  return d;
}

// Reference desk-scale shape of the simulation-parameter table.
inline Desk make_reference_desk(uint64_t seed, int n_side = 16) {
  return make_desk(4, 16, 8, n_side, n_side, seed);
}

}  // namespace leobf::fixtures
