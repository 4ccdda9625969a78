#pragma once

#include <vector>

#include "leobf/channel.hpp"
#include "leobf/config.hpp"
#include "leobf/scenario.hpp"
#include "leobf/types.hpp"

namespace leobf {

struct Schedule {
  int S = 0, U = 0;
  std::vector<std::vector<int>> served;  // per satellite, ascending user ids
  std::vector<uint8_t> mask;             // S*U, 1 iff scheduled

  bool scheduled(int s, int u) const { return mask[s * U + u] != 0; }
  // Slot of user u in satellite s's chain ordering, -1 if not scheduled.
  int slot(int s, int u) const {
    const auto& v = served[s];
    for (size_t t = 0; t < v.size(); ++t)
      if (v[t] == u) return static_cast<int>(t);
    return -1;
  }
};

// Steering-vector analog stage. F[s] is N x T_s with unit-modulus entries;
// gram[s] = F^H F.
struct AnalogBeamformer {
  std::vector<CMat> F;
  std::vector<CMat> gram;
};

// Per-satellite digital beamformers for every evaluated subcarrier.
// W[s*K+k] is T_s x U; masked columns are identically zero.
struct BeamformerSet {
  int S = 0, U = 0, K = 0;
  std::vector<CMat> W;

  static BeamformerSet zeros(const Schedule& sched, const AnalogBeamformer& analog,
                             int k_eval);
  CMat& at(int s, int k) { return W[s * K + k]; }
  const CMat& at(int s, int k) const { return W[s * K + k]; }

  // trace(W^H gram W) for one satellite/subcarrier.
  double radiated_power(const AnalogBeamformer& analog, int s, int k) const;
};

// The T nearest UTs per satellite, ascending indices, ties to the lower id.
Schedule schedule_users(const Scenario& scn, const SystemConfig& cfg);

// Columns are conjugated unit-modulus steering phases of the scheduled users.
AnalogBeamformer build_analog_beamformer(const Scenario& scn, const Schedule& sched,
                                         const SystemConfig& cfg);

// Fills stats.at(s,u).g = F_s^T steering(s,u) for all pairs, scheduled or not.
void effective_channels(ChannelStats& stats, const AnalogBeamformer& analog,
                        const Schedule& sched);

}  // namespace leobf
