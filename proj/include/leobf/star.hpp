#pragma once

#include "leobf/intermediates.hpp"
#include "leobf/isl.hpp"
#include "leobf/wmmse.hpp"

namespace leobf {

struct PddState {
  std::vector<Intermediates> theta;  // duals, one per satellite
  double rho = 1.0;
  double delta = 2.0;       // penalty growth, > 1
  double q_att = 0.9;       // attenuation of the violation target, in (0,1)
  double h_prev = 0.0;      // previous violation; first test always accepts

  static PddState init(int S, int U, const SolverParams& sp);
};

struct PddResult {
  Intermediates gamma;
  int iterations = 0;
  double h_final = 0;
};

// Penalty dual decomposition on the consensus problem: alternates the
// separable ALP minimizer with the dual/penalty branch until the violation
// h = min_s || Gamma - Gamma_s + Theta_s/rho ||_inf drops below pdd_tol or
// the iteration cap. With mutually inconsistent Gamma_s the equalities are
// infeasible and h plateaus at the disagreement level; the compromise
// minimizer is still returned.
PddResult pdd_consensus(const RVec& nu, const CVec& mu, double sigma2,
                        const std::vector<Intermediates>& gamma_locals,
                        PddState& state, const SolverParams& sp);

struct StarResult {
  BeamformerSet bf;
  RVec trace;  // approximate-bound objective per outer iteration
  int iterations = 0;
};

// Parallel edge updates against a common broadcast, PDD consensus at the
// center, broadcast back. Edge steps are data-parallel by construction;
// execution here is sequential and observationally equivalent.
StarResult run_star(const ChannelStats& stats, const Schedule& sched,
                    const AnalogBeamformer& analog, const NoiseModel& noise,
                    const SystemConfig& cfg, const BeamformerSet& init,
                    int central_sat = 0, MessageLedger* ledger = nullptr);

}  // namespace leobf
