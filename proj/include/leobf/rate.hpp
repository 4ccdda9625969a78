#pragma once

#include "leobf/channel.hpp"
#include "leobf/schedule.hpp"
#include "leobf/types.hpp"

namespace leobf {

// Stacked interference matrix of user u on evaluated subcarrier k.
// Block (i,j) over satellite chain dims: conj(alpha_i)alpha_j g_i* g_j^T for
// i != j and gamma_i g_i* g_i^T on the diagonal. Hermitian PSD.
CMat build_tu(const ChannelStats& stats, int u, int k);

// Exact hardening-bound rate of user u on subcarrier k, bit/s/Hz.
double hardening_bound_exact(const ChannelStats& stats, const BeamformerSet& bf,
                             const NoiseModel& noise, int u, int k);

// Variant that drops the cross-satellite interference couplings.
double hardening_bound_approx(const ChannelStats& stats, const BeamformerSet& bf,
                              const NoiseModel& noise, int u, int k);

struct McResult {
  double mean = 0;
  double std_err = 0;
};

// Monte-Carlo ergodic rate over instantaneous gain draws; the oracle the
// hardening bound is checked against. Parallel path bit-identical to serial.
McResult mc_ergodic_rate(const ChannelStats& stats, const BeamformerSet& bf,
                         const NoiseModel& noise, int u, int k, int draws,
                         uint64_t seed, Exec exec = Exec::Parallel);

struct RateReport {
  RMat rate_exact;    // U x k_eval, bit/s/Hz
  RMat rate_approx;   // U x k_eval
  double objective = 0;     // mean over evaluated subcarriers of sum_u rate
  double sum_rate_bps = 0;  // delta_f * K * objective
};

// Aggregates rates over all evaluated subcarriers. When a subset of the
// configured K subcarriers is evaluated, sum_rate_bps scales by K/k_eval.
RateReport sum_rate(const ChannelStats& stats, const BeamformerSet& bf,
                    const NoiseModel& noise, const SystemConfig& cfg);

}  // namespace leobf
