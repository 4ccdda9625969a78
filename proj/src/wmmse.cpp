#include "leobf/wmmse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace leobf {

namespace {

// Signal mean and the bracketed noise-plus-interference term Psi_u.
void signal_and_psi(const ChannelStats& stats, const BeamformerSet& bf,
                    const NoiseModel& noise, int u, int k, cplx& sig,
                    double& psi) {
  sig = cplx(0, 0);
  double self_var = 0.0;
  for (int s = 0; s < stats.S; ++s) {
    const LinkChannel& link = stats.at(s, u);
    const cplx proj = link.g.transpose() * bf.at(s, k).col(u);
    sig += link.alpha_bar[k] * proj;
    self_var += link.beta[k] * std::norm(proj);
  }
  double iui = 0.0;
  for (int l = 0; l < stats.U; ++l) {
    if (l == u) continue;
    cplx coherent(0, 0);
    double resid = 0.0;
    for (int s = 0; s < stats.S; ++s) {
      const LinkChannel& link = stats.at(s, u);
      const cplx proj = link.g.transpose() * bf.at(s, k).col(l);
      coherent += link.alpha_bar[k] * proj;
      resid += (link.gamma[k] - link.alpha_bar[k] * link.alpha_bar[k]) *
               std::norm(proj);
    }
    iui += std::norm(coherent) + resid;
  }
  psi = self_var + iui + noise.sigma2;
}

}  // namespace

double wmmse_upsilon(const ChannelStats& stats, const BeamformerSet& bf,
                     const NoiseModel& noise, cplx mu, int u, int k) {
  cplx sig;
  double psi;
  signal_and_psi(stats, bf, noise, u, k, sig, psi);
  return std::norm(1.0 - mu * sig) + std::norm(mu) * psi;
}

cplx update_mu(const ChannelStats& stats, const BeamformerSet& bf,
               const NoiseModel& noise, int u, int k) {
  cplx sig;
  double psi;
  signal_and_psi(stats, bf, noise, u, k, sig, psi);
  return std::conj(sig) / (std::norm(sig) + psi);
}

double update_nu(double upsilon) {
  if (!(upsilon > 0)) throw std::logic_error("update_nu: Upsilon must be > 0");
  return 1.0 / upsilon;
}

AuxiliaryState update_auxiliaries(const ChannelStats& stats,
                                  const BeamformerSet& bf,
                                  const NoiseModel& noise, int k) {
  AuxiliaryState aux;
  aux.mu.resize(stats.U);
  aux.nu.resize(stats.U);
  aux.upsilon.resize(stats.U);
  for (int u = 0; u < stats.U; ++u) {
    cplx sig;
    double psi;
    signal_and_psi(stats, bf, noise, u, k, sig, psi);
    aux.mu[u] = std::conj(sig) / (std::norm(sig) + psi);
    aux.upsilon[u] = std::norm(1.0 - aux.mu[u] * sig) + std::norm(aux.mu[u]) * psi;
    aux.nu[u] = update_nu(aux.upsilon[u]);
  }
  return aux;
}

MultiblockQcqp assemble_central_qcqp(const ChannelStats& stats,
                                     const AuxiliaryState& aux,
                                     const Schedule& sched,
                                     const AnalogBeamformer& analog,
                                     double budget, int k) {
  const int S = stats.S, U = stats.U;
  MultiblockQcqp prob;
  prob.offset.resize(S + 1, 0);
  for (int s = 0; s < S; ++s) {
    prob.offset[s + 1] = prob.offset[s] + static_cast<int>(analog.F[s].cols());
  }
  const int D = prob.offset.back();

  // Weighted sum of the interference matrices; per-column matrices subtract
  // the own-user term back out.
  CMat t_weighted = CMat::Zero(D, D);
  std::vector<CMat> t_mats(U);
  for (int u = 0; u < U; ++u) {
    t_mats[u] = build_tu(stats, u, k);
    t_weighted += aux.nu[u] * std::norm(aux.mu[u]) * t_mats[u];
  }

  prob.A.reserve(U);
  prob.b.reserve(U);
  for (int l = 0; l < U; ++l) {
    const double w = aux.nu[l] * std::norm(aux.mu[l]);
    CMat A = t_weighted - w * t_mats[l];
    CVec c(D);
    for (int s = 0; s < S; ++s) {
      const LinkChannel& link = stats.at(s, l);
      c.segment(prob.offset[s], link.g.size()) = link.alpha_bar[k] * link.g;
    }
    A += w * (c.conjugate() * c.transpose());
    for (int s = 0; s < S; ++s) {
      const LinkChannel& link = stats.at(s, l);
      const int o = prob.offset[s];
      const int t = static_cast<int>(link.g.size());
      A.block(o, o, t, t) +=
          w * link.beta[k] * (link.g.conjugate() * link.g.transpose());
    }
    prob.A.push_back(std::move(A));
    prob.b.push_back(aux.nu[l] * std::conj(aux.mu[l]) * c.conjugate());
  }

  prob.cons.reserve(S);
  prob.active_cols.resize(S);
  for (int s = 0; s < S; ++s) {
    prob.cons.push_back(PowerConstraint{analog.gram[s], budget});
    prob.active_cols[s] = sched.served[s];
  }
  return prob;
}

void central_beamformer_update(const ChannelStats& stats, const AuxiliaryState& aux,
                               const Schedule& sched, const AnalogBeamformer& analog,
                               double budget, const SolverParams& solver,
                               BeamformerSet& bf, int k) {
  const MultiblockQcqp prob =
      assemble_central_qcqp(stats, aux, sched, analog, budget, k);
  std::vector<CMat> init(stats.S);
  for (int s = 0; s < stats.S; ++s) init[s] = bf.at(s, k);
  std::vector<CMat> w = solve_multiblock_qcqp(prob, std::move(init),
                                              solver.bisect_tol, solver.bcd_rounds);
  for (int s = 0; s < stats.S; ++s) bf.at(s, k) = w[s];
}

WmmseResult run_central(const ChannelStats& stats, const Schedule& sched,
                        const AnalogBeamformer& analog, const NoiseModel& noise,
                        const SystemConfig& cfg, const BeamformerSet& init,
                        Exec exec) {
  const int ke = stats.k_eval();
  const double budget = cfg.power_budget_w() / cfg.num_subcarriers;
  const SolverParams& sp = cfg.solver;

  WmmseResult result;
  result.bf = init;
  std::vector<std::vector<double>> traces(ke);
  std::vector<int> iters(ke, 0);

#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
  for (int k = 0; k < ke; ++k) {
    auto objective = [&](const BeamformerSet& bf) {
      double obj = 0.0;
      for (int u = 0; u < stats.U; ++u) {
        obj += hardening_bound_exact(stats, bf, noise, u, k);
      }
      return obj;
    };
    traces[k].push_back(objective(result.bf));
    for (int it = 0; it < sp.wmmse_max_iters; ++it) {
      const AuxiliaryState aux = update_auxiliaries(stats, result.bf, noise, k);
      central_beamformer_update(stats, aux, sched, analog, budget, sp,
                                result.bf, k);
      const double obj = objective(result.bf);
      const double prev = traces[k].back();
      traces[k].push_back(obj);
      iters[k] = it + 1;
      if (std::abs(obj - prev) < sp.wmmse_tol * std::abs(prev)) break;
    }
  }

  // Aggregate across subcarriers; shorter traces repeat their final value.
  size_t longest = 0;
  for (const auto& t : traces) longest = std::max(longest, t.size());
  result.trace.resize(longest);
  for (size_t i = 0; i < longest; ++i) {
    double acc = 0.0;
    for (const auto& t : traces) acc += i < t.size() ? t[i] : t.back();
    result.trace[i] = acc / ke;
  }
  result.iterations = *std::max_element(iters.begin(), iters.end());
  return result;
}

}  // namespace leobf
