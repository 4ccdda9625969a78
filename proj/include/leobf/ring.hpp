#pragma once

#include "leobf/intermediates.hpp"
#include "leobf/isl.hpp"
#include "leobf/wmmse.hpp"

namespace leobf {

struct RingResult {
  BeamformerSet bf;
  RVec trace;   // approximate-bound objective per full loop, entry 0 = init
  int loops = 0;
};

// Sequential decentralized optimization: satellites update locally in index
// order and relay the refreshed intermediates to the next ring neighbor.
// One full loop (S local steps, S relayed messages) counts as one iteration.
RingResult run_ring(const ChannelStats& stats, const Schedule& sched,
                    const AnalogBeamformer& analog, const NoiseModel& noise,
                    const SystemConfig& cfg, const BeamformerSet& init,
                    MessageLedger* ledger = nullptr);

}  // namespace leobf
