#pragma once

#include <vector>

#include "leobf/qcqp.hpp"
#include "leobf/rate.hpp"
#include "leobf/schedule.hpp"

namespace leobf {

// Auxiliary variables of the MMSE reformulation for one subcarrier.
struct AuxiliaryState {
  CVec mu;       // U
  RVec nu;       // U
  RVec upsilon;  // U
};

// MSE-like scalar of user u given the current beamformers:
// |1 - mu F_u|^2 + |mu|^2 (self-variance + coupled IUI + sigma2).
double wmmse_upsilon(const ChannelStats& stats, const BeamformerSet& bf,
                     const NoiseModel& noise, cplx mu, int u, int k);

cplx update_mu(const ChannelStats& stats, const BeamformerSet& bf,
               const NoiseModel& noise, int u, int k);

// nu = 1 / Upsilon; Upsilon must be positive.
double update_nu(double upsilon);

AuxiliaryState update_auxiliaries(const ChannelStats& stats,
                                  const BeamformerSet& bf,
                                  const NoiseModel& noise, int k);

// Stacked convex QCQP of the beamformer update for one subcarrier:
// min sum_u nu_u Upsilon_u under per-satellite power budgets and the
// schedule mask (masked columns pinned to zero).
MultiblockQcqp assemble_central_qcqp(const ChannelStats& stats,
                                     const AuxiliaryState& aux,
                                     const Schedule& sched,
                                     const AnalogBeamformer& analog,
                                     double budget_per_subcarrier, int k);

// One beamformer update: block coordinate descent over satellites.
void central_beamformer_update(const ChannelStats& stats, const AuxiliaryState& aux,
                               const Schedule& sched, const AnalogBeamformer& analog,
                               double budget_per_subcarrier,
                               const SolverParams& solver, BeamformerSet& bf, int k);

struct WmmseResult {
  BeamformerSet bf;
  RVec trace;      // objective (sum over users of the exact bound, bit/s/Hz),
                   // entry 0 = initialization, averaged over subcarriers
  int iterations = 0;
};

// Alternating auxiliary/beamformer optimization, per-subcarrier loops.
// Subcarriers are independent; the parallel path is bit-identical.
WmmseResult run_central(const ChannelStats& stats, const Schedule& sched,
                        const AnalogBeamformer& analog, const NoiseModel& noise,
                        const SystemConfig& cfg, const BeamformerSet& init,
                        Exec exec = Exec::Parallel);

}  // namespace leobf
