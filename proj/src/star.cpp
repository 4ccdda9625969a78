#include "leobf/star.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace leobf {

PddState PddState::init(int S, int U, const SolverParams& sp) {
  PddState st;
  st.theta.assign(S, Intermediates::zeros(U));
  st.rho = sp.pdd_rho0;
  st.delta = sp.pdd_delta;
  st.q_att = sp.pdd_q;
  st.h_prev = std::numeric_limits<double>::infinity();
  return st;
}

namespace {

double violation(const Intermediates& gamma,
                 const std::vector<Intermediates>& locals,
                 const std::vector<Intermediates>& theta, double rho) {
  double h = std::numeric_limits<double>::infinity();
  for (size_t s = 0; s < locals.size(); ++s) {
    Intermediates diff = gamma;
    diff -= locals[s];
    diff += theta[s].scaled(1.0 / rho);
    h = std::min(h, diff.max_abs());
  }
  return h;
}

}  // namespace

PddResult pdd_consensus(const RVec& nu, const CVec& mu, double sigma2,
                        const std::vector<Intermediates>& gamma_locals,
                        PddState& state, const SolverParams& sp) {
  if (gamma_locals.empty()) throw SolverError("pdd_consensus: S must be >= 1");

  // Work in noise-normalized units (f in noise amplitudes, p/q in noise
  // powers) so the default penalty rho0 is commensurate with the data
  // whatever the physical scales are. The MSE term is invariant under
  // this rescaling with mu absorbing the amplitude factor.
  const double s2 = sigma2 > 0 ? sigma2 : 1.0;
  const double amp = std::sqrt(s2);
  auto to_normalized = [&](const Intermediates& g) {
    Intermediates n = g;
    n.f /= amp;
    n.p /= s2;
    n.q /= s2;
    return n;
  };
  auto from_normalized = [&](const Intermediates& n) {
    Intermediates g = n;
    g.f *= amp;
    g.p *= s2;
    g.q *= s2;
    return g;
  };

  std::vector<Intermediates> locals;
  locals.reserve(gamma_locals.size());
  for (const auto& g : gamma_locals) locals.push_back(to_normalized(g));
  const CVec mu_n = amp * mu;
  for (auto& th : state.theta) th = to_normalized(th);

  PddResult res;
  for (int j = 1; j <= sp.pdd_max_iters; ++j) {
    res.gamma =
        solve_separable_alp(nu, mu_n, 1.0, locals, state.theta, state.rho);
    const double h = violation(res.gamma, locals, state.theta, state.rho);
    if (!std::isfinite(h)) {
      throw SolverError("pdd_consensus: non-finite violation (penalty blow-up)");
    }
    res.iterations = j;
    res.h_final = h;
    if (h < sp.pdd_tol) break;
    if (h <= state.q_att * state.h_prev) {
      for (size_t s = 0; s < locals.size(); ++s) {
        Intermediates step = res.gamma;
        step -= locals[s];
        state.theta[s] += step.scaled(state.rho);
      }
    } else {
      state.rho *= state.delta;
    }
    state.h_prev = h;
  }
  res.gamma = from_normalized(res.gamma);
  for (auto& th : state.theta) th = from_normalized(th);
  return res;
}

StarResult run_star(const ChannelStats& stats, const Schedule& sched,
                    const AnalogBeamformer& analog, const NoiseModel& noise,
                    const SystemConfig& cfg, const BeamformerSet& init,
                    int central_sat, MessageLedger* ledger) {
  if (central_sat < 0 || central_sat >= stats.S) {
    throw std::invalid_argument("run_star: central satellite out of range");
  }
  const int ke = stats.k_eval();
  const double budget = cfg.power_budget_w() / cfg.num_subcarriers;
  const SolverParams& sp = cfg.solver;

  StarResult result;
  result.bf = init;

  // Broadcast state: every satellite starts each outer iteration from the
  // same intermediates.
  std::vector<Intermediates> broadcast(ke);
  for (int k = 0; k < ke; ++k) {
    broadcast[k] = compute_intermediates(stats, result.bf, k);
  }

  auto true_objective = [&]() {
    double obj = 0.0;
    for (int k = 0; k < ke; ++k) {
      obj += approx_objective_from(compute_intermediates(stats, result.bf, k),
                                   noise.sigma2);
    }
    return obj / ke;
  };

  std::vector<double> trace{true_objective()};
  for (int iter = 0; iter < sp.wmmse_max_iters; ++iter) {
    // Local updates at every satellite against the shared broadcast; the
    // edge steps are mutually independent (parallel in deployment).
    std::vector<std::vector<Intermediates>> locals(
        ke, std::vector<Intermediates>(stats.S, Intermediates::zeros(stats.U)));
    for (int s = 0; s < stats.S; ++s) {
      for (int k = 0; k < ke; ++k) {
        LocalStepResult step =
            local_wmmse_step(stats, analog, sched, noise, budget, sp, s, k,
                             broadcast[k], result.bf, /*strict=*/false);
        locals[k][s] = std::move(step.inter);
      }
      if (ledger && s != central_sat) {
        ledger->record_message(iter, s, central_sat, ke);
      }
    }

    // Consensus at the center, one PDD run per subcarrier. All satellites
    // derived identical auxiliaries from the shared broadcast; the center's
    // copy parameterizes the consensus objective.
    for (int k = 0; k < ke; ++k) {
      const DecentralAux aux = auxiliaries_from(broadcast[k], noise.sigma2);
      PddState st = PddState::init(stats.S, stats.U, sp);
      const PddResult consensus =
          pdd_consensus(aux.nu, aux.mu, noise.sigma2, locals[k], st, sp);
      broadcast[k] = consensus.gamma;
    }
    if (ledger) {
      for (int s = 0; s < stats.S; ++s) {
        if (s != central_sat) ledger->record_message(iter, central_sat, s, ke);
      }
    }

    const double obj = true_objective();
    const double prev = trace.back();
    trace.push_back(obj);
    result.iterations = iter + 1;
    if (std::abs(obj - prev) < sp.wmmse_tol * std::abs(prev)) break;
  }

  result.trace = Eigen::Map<RVec>(trace.data(), trace.size());
  return result;
}

}  // namespace leobf
