#pragma once

#include <vector>

#include "leobf/channel.hpp"
#include "leobf/qcqp.hpp"
#include "leobf/schedule.hpp"

namespace leobf {

// Satellite-local remainders after subtracting the own contribution from
// the aggregated intermediates.
struct LocalIntermediates {
  CVec f;  // F_{s,u}
  RVec p;  // P_{s,u}
  RMat q;  // Q_{s,u,l}
};

// Aggregates F_u, P_u, Q_{u,l} over all satellites from the current
// beamformers (q diagonal zero by convention).
Intermediates compute_intermediates(const ChannelStats& stats,
                                    const BeamformerSet& bf, int k);

// Own-contribution subtraction. In strict mode, negative p/q beyond the
// floating-point tolerance raise (stale or corrupt intermediates); small
// negatives clamp to zero. Non-strict mode keeps raw values, for flows
// where the incoming aggregate is a consensus compromise rather than the
// exact network state.
LocalIntermediates extract_local(const Intermediates& inter,
                                 const ChannelStats& stats,
                                 const BeamformerSet& bf, int s, int k,
                                 bool strict = true);

// Objective of the decentralized schemes: sum over users of the
// approximate-bound rate, computable from the intermediates alone.
double approx_objective_from(const Intermediates& inter, double sigma2);

// Auxiliary updates of the decentralized reformulation, computable from the
// aggregated intermediates alone.
struct DecentralAux {
  CVec mu;
  RVec nu;
};
DecentralAux auxiliaries_from(const Intermediates& inter, double sigma2);

struct LocalStepResult {
  Intermediates inter;  // refreshed aggregates after the own update
  CVec mu;
  RVec nu;
};

// One satellite-local update: auxiliaries from the received aggregates,
// beamformer via the local single-satellite QCQP with frozen remainders,
// then the aggregate refresh.
LocalStepResult local_wmmse_step(const ChannelStats& stats,
                                 const AnalogBeamformer& analog,
                                 const Schedule& sched, const NoiseModel& noise,
                                 double budget_per_subcarrier,
                                 const SolverParams& solver, int s, int k,
                                 const Intermediates& inter, BeamformerSet& bf,
                                 bool strict = true);

}  // namespace leobf
