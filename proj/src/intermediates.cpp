#include "leobf/intermediates.hpp"

#include <cmath>
#include <stdexcept>

namespace leobf {

Intermediates compute_intermediates(const ChannelStats& stats,
                                    const BeamformerSet& bf, int k) {
  Intermediates inter = Intermediates::zeros(stats.U);
  for (int u = 0; u < stats.U; ++u) {
    for (int s = 0; s < stats.S; ++s) {
      const LinkChannel& link = stats.at(s, u);
      const cplx own = link.g.transpose() * bf.at(s, k).col(u);
      inter.f[u] += link.alpha_bar[k] * own;
      inter.p[u] += link.beta[k] * std::norm(own);
      for (int l = 0; l < stats.U; ++l) {
        if (l == u) continue;
        const cplx pl = link.g.transpose() * bf.at(s, k).col(l);
        inter.q(u, l) += link.gamma[k] * std::norm(pl);
      }
    }
  }
  return inter;
}

LocalIntermediates extract_local(const Intermediates& inter,
                                 const ChannelStats& stats,
                                 const BeamformerSet& bf, int s, int k,
                                 bool strict) {
  const int U = stats.U;
  LocalIntermediates loc;
  loc.f.resize(U);
  loc.p.resize(U);
  loc.q = RMat::Zero(U, U);

  const double tol = 1e-9 * (1.0 + inter.max_abs());
  auto settle = [&](double v, const char* what) {
    if (v < -tol) {
      if (strict) {
        throw std::runtime_error(std::string("extract_local: negative ") + what +
                                 " beyond tolerance (stale intermediates?)");
      }
      return v;  // consensus flows legitimately under-shoot
    }
    return std::max(v, 0.0);
  };

  for (int u = 0; u < U; ++u) {
    const LinkChannel& link = stats.at(s, u);
    const cplx own = link.g.transpose() * bf.at(s, k).col(u);
    loc.f[u] = inter.f[u] - link.alpha_bar[k] * own;
    loc.p[u] = settle(inter.p[u] - link.beta[k] * std::norm(own), "P");
    for (int l = 0; l < U; ++l) {
      if (l == u) continue;
      const cplx pl = link.g.transpose() * bf.at(s, k).col(l);
      loc.q(u, l) = settle(inter.q(u, l) - link.gamma[k] * std::norm(pl), "Q");
    }
  }
  return loc;
}

double approx_objective_from(const Intermediates& inter, double sigma2) {
  double obj = 0.0;
  const int U = static_cast<int>(inter.f.size());
  for (int u = 0; u < U; ++u) {
    double denom = inter.p[u] + sigma2;
    for (int l = 0; l < U; ++l) {
      if (l != u) denom += inter.q(u, l);
    }
    obj += std::log2(1.0 + std::norm(inter.f[u]) / denom);
  }
  return obj;
}

DecentralAux auxiliaries_from(const Intermediates& inter, double sigma2) {
  const int U = static_cast<int>(inter.f.size());
  DecentralAux aux;
  aux.mu.resize(U);
  aux.nu.resize(U);
  for (int u = 0; u < U; ++u) {
    double denom = std::norm(inter.f[u]) + inter.p[u] + sigma2;
    for (int l = 0; l < U; ++l) {
      if (l != u) denom += inter.q(u, l);
    }
    aux.mu[u] = std::conj(inter.f[u]) / denom;
    const double upsilon =
        std::norm(1.0 - aux.mu[u] * inter.f[u]) +
        std::norm(aux.mu[u]) * (denom - std::norm(inter.f[u]));
    if (!(upsilon > 0)) throw std::logic_error("auxiliaries: Upsilon must be > 0");
    aux.nu[u] = 1.0 / upsilon;
  }
  return aux;
}

LocalStepResult local_wmmse_step(const ChannelStats& stats,
                                 const AnalogBeamformer& analog,
                                 const Schedule& sched, const NoiseModel& noise,
                                 double budget, const SolverParams& solver,
                                 int s, int k, const Intermediates& inter,
                                 BeamformerSet& bf, bool strict) {
  const int U = stats.U;
  const LocalIntermediates loc = extract_local(inter, stats, bf, s, k, strict);

  const DecentralAux aux = auxiliaries_from(inter, noise.sigma2);
  LocalStepResult out;
  out.mu = aux.mu;
  out.nu = aux.nu;

  // Per-column quadratics of the local subproblem with frozen remainders.
  std::vector<ColumnQuadratic> cols;
  const auto& served = sched.served[s];
  cols.reserve(served.size());
  for (int l : served) {
    const LinkChannel& own = stats.at(s, l);
    const double wl = out.nu[l] * std::norm(out.mu[l]);
    ColumnQuadratic c;
    c.A = wl * (own.alpha_bar[k] * own.alpha_bar[k] + own.beta[k]) *
          (own.g.conjugate() * own.g.transpose());
    for (int u = 0; u < U; ++u) {
      if (u == l) continue;
      const LinkChannel& lu = stats.at(s, u);
      c.A += out.nu[u] * std::norm(out.mu[u]) * lu.gamma[k] *
             (lu.g.conjugate() * lu.g.transpose());
    }
    c.b = out.nu[l] * std::conj(out.mu[l]) * own.alpha_bar[k] * own.g.conjugate() -
          wl * own.alpha_bar[k] * loc.f[l] * own.g.conjugate();
    cols.push_back(std::move(c));
  }

  const QcqpSolution sol = solve_single_constraint_qcqp(
      cols, PowerConstraint{analog.gram[s], budget}, solver.bisect_tol);

  CMat& W = bf.at(s, k);
  W.setZero();
  for (size_t t = 0; t < served.size(); ++t) W.col(served[t]) = sol.cols[t];

  // Aggregate refresh with the new own contribution.
  out.inter = Intermediates::zeros(U);
  for (int u = 0; u < U; ++u) {
    const LinkChannel& link = stats.at(s, u);
    const cplx own = link.g.transpose() * W.col(u);
    out.inter.f[u] = link.alpha_bar[k] * own + loc.f[u];
    out.inter.p[u] = link.beta[k] * std::norm(own) + loc.p[u];
    for (int l = 0; l < U; ++l) {
      if (l == u) continue;
      const cplx pl = link.g.transpose() * W.col(l);
      out.inter.q(u, l) = link.gamma[k] * std::norm(pl) + loc.q(u, l);
    }
  }
  return out;
}

}  // namespace leobf
