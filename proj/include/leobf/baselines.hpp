#pragma once

#include "leobf/rate.hpp"
#include "leobf/schedule.hpp"

namespace leobf {

// Per-satellite conjugate-channel beamformers with one common scaling to the
// full power budget.
BeamformerSet mrt_beamformers(const ChannelStats& stats, const Schedule& sched,
                              const AnalogBeamformer& analog,
                              double budget_per_subcarrier);

struct ZfResult {
  BeamformerSet bf;
  bool regularized = false;  // pseudo-inverse fell back to ridge regularization
};

// Columns invert the stacked effective channels of the scheduled users, so
// intra-satellite scheduled cross-terms vanish; common scaling to budget.
ZfResult zf_beamformers(const ChannelStats& stats, const Schedule& sched,
                        const AnalogBeamformer& analog,
                        double budget_per_subcarrier);

// Single-satellite-service assignment: each UT to its nearest satellite,
// oversubscribed satellites keep their N_RF nearest members.
Schedule s3_assignment(const Scenario& scn, const SystemConfig& cfg);

enum class S3Scheme { Wmmse, Mrt, Zf };

struct S3Result {
  Schedule sched;
  AnalogBeamformer analog;
  ChannelStats stats;  // base statistics with g refilled for the S3 analog
  BeamformerSet bf;
  RateReport report;   // exact bound with all cross-satellite interference
};

// Each satellite designs beamformers for its assigned UTs in isolation; the
// final rates keep every satellite transmitting simultaneously.
S3Result s3_run(const SystemConfig& cfg, const Scenario& scn,
                const ChannelStats& base_stats, const NoiseModel& noise,
                S3Scheme scheme);

}  // namespace leobf
