#include "leobf/ring.hpp"

#include <cmath>

namespace leobf {

RingResult run_ring(const ChannelStats& stats, const Schedule& sched,
                    const AnalogBeamformer& analog, const NoiseModel& noise,
                    const SystemConfig& cfg, const BeamformerSet& init,
                    MessageLedger* ledger) {
  const int ke = stats.k_eval();
  const double budget = cfg.power_budget_w() / cfg.num_subcarriers;
  const SolverParams& sp = cfg.solver;

  RingResult result;
  result.bf = init;

  // Initial intermediates from the initialization, held by satellite 0.
  std::vector<Intermediates> inter(ke);
  for (int k = 0; k < ke; ++k) {
    inter[k] = compute_intermediates(stats, result.bf, k);
  }

  auto objective = [&]() {
    double obj = 0.0;
    for (int k = 0; k < ke; ++k) {
      obj += approx_objective_from(inter[k], noise.sigma2);
    }
    return obj / ke;
  };

  std::vector<double> trace{objective()};
  for (int loop = 0; loop < sp.wmmse_max_iters; ++loop) {
    for (int s = 0; s < stats.S; ++s) {
      for (int k = 0; k < ke; ++k) {
        LocalStepResult step = local_wmmse_step(stats, analog, sched, noise,
                                                budget, sp, s, k, inter[k],
                                                result.bf, /*strict=*/true);
        inter[k] = std::move(step.inter);
      }
      if (ledger) {
        ledger->record_message(loop, s, (s + 1) % stats.S, ke);
      }
    }
    const double obj = objective();
    const double prev = trace.back();
    trace.push_back(obj);
    result.loops = loop + 1;
    if (std::abs(obj - prev) < sp.wmmse_tol * std::abs(prev)) break;
  }

  result.trace = Eigen::Map<RVec>(trace.data(), trace.size());
  return result;
}

}  // namespace leobf
