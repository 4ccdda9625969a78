#include "leobf/rate.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace leobf {

namespace {

std::vector<int> chain_offsets(const ChannelStats& stats) {
  std::vector<int> off(stats.S + 1, 0);
  for (int s = 0; s < stats.S; ++s) {
    off[s + 1] = off[s] + static_cast<int>(stats.at(s, 0).g.size());
  }
  return off;
}

void check_dims(const ChannelStats& stats, const BeamformerSet& bf, int u, int k) {
  if (bf.S != stats.S || bf.U != stats.U) {
    throw std::invalid_argument("rate: beamformer/stats dimension mismatch");
  }
  if (u < 0 || u >= stats.U || k < 0 || k >= stats.k_eval()) {
    throw std::out_of_range("rate: index out of range");
  }
  for (int s = 0; s < stats.S; ++s) {
    if (bf.at(s, k).rows() != stats.at(s, u).g.size()) {
      throw std::invalid_argument("rate: chain dimension mismatch");
    }
  }
}

}  // namespace

CMat build_tu(const ChannelStats& stats, int u, int k) {
  const auto off = chain_offsets(stats);
  const int D = off.back();
  CMat T = CMat::Zero(D, D);
  for (int i = 0; i < stats.S; ++i) {
    const LinkChannel& li = stats.at(i, u);
    for (int j = 0; j < stats.S; ++j) {
      const LinkChannel& lj = stats.at(j, u);
      const cplx coef = (i == j)
                            ? cplx(li.gamma[k], 0.0)
                            : cplx(li.alpha_bar[k] * lj.alpha_bar[k], 0.0);
      T.block(off[i], off[j], li.g.size(), lj.g.size()) =
          coef * (li.g.conjugate() * lj.g.transpose());
    }
  }
  return T;
}

double hardening_bound_exact(const ChannelStats& stats, const BeamformerSet& bf,
                             const NoiseModel& noise, int u, int k) {
  check_dims(stats, bf, u, k);
  cplx sig(0.0, 0.0);
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
    // w^H T_u w = |sum_s abar g^T w|^2 + sum_s (gamma - abar^2)|g^T w|^2
    cplx coherent(0.0, 0.0);
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
  return std::log2(1.0 + std::norm(sig) / (self_var + iui + noise.sigma2));
}

double hardening_bound_approx(const ChannelStats& stats, const BeamformerSet& bf,
                              const NoiseModel& noise, int u, int k) {
  check_dims(stats, bf, u, k);
  cplx sig(0.0, 0.0);
  double self_var = 0.0;
  double iui = 0.0;
  for (int s = 0; s < stats.S; ++s) {
    const LinkChannel& link = stats.at(s, u);
    const cplx proj = link.g.transpose() * bf.at(s, k).col(u);
    sig += link.alpha_bar[k] * proj;
    self_var += link.beta[k] * std::norm(proj);
    for (int l = 0; l < stats.U; ++l) {
      if (l == u) continue;
      const cplx pl = link.g.transpose() * bf.at(s, k).col(l);
      iui += link.gamma[k] * std::norm(pl);
    }
  }
  return std::log2(1.0 + std::norm(sig) / (self_var + iui + noise.sigma2));
}

McResult mc_ergodic_rate(const ChannelStats& stats, const BeamformerSet& bf,
                         const NoiseModel& noise, int u, int k, int draws,
                         uint64_t seed, Exec exec) {
  check_dims(stats, bf, u, k);
  if (draws < 1) throw std::invalid_argument("mc_ergodic_rate: draws must be >= 1");

  // Beamformer projections are draw-independent.
  CMat proj(stats.S, stats.U);
  for (int s = 0; s < stats.S; ++s) {
    const LinkChannel& link = stats.at(s, u);
    proj.row(s) = (link.g.transpose() * bf.at(s, k)).row(0);
  }

  std::vector<double> rates(draws);
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
  for (int d = 0; d < draws; ++d) {
    Rng rng = Rng::stream(seed, "mc", u, k, d);
    CVec alpha(stats.S);
    for (int s = 0; s < stats.S; ++s) {
      const LinkChannel& link = stats.at(s, u);
      alpha[s] = sample_alpha(link.alpha_bar[k], link.beta[k], rng);
    }
    const cplx sig = alpha.transpose() * proj.col(u);
    double iui = 0.0;
    for (int l = 0; l < stats.U; ++l) {
      if (l == u) continue;
      iui += std::norm(cplx(alpha.transpose() * proj.col(l)));
    }
    rates[d] = std::log2(1.0 + std::norm(sig) / (iui + noise.sigma2));
  }

  McResult res;
  double sum = 0.0;
  for (double r : rates) sum += r;
  res.mean = sum / draws;
  double ss = 0.0;
  for (double r : rates) ss += (r - res.mean) * (r - res.mean);
  res.std_err = draws > 1 ? std::sqrt(ss / (draws - 1.0) / draws) : 0.0;
  return res;
}

RateReport sum_rate(const ChannelStats& stats, const BeamformerSet& bf,
                    const NoiseModel& noise, const SystemConfig& cfg) {
  const int ke = stats.k_eval();
  if (ke < 1) throw std::invalid_argument("sum_rate: empty subcarrier set");
  RateReport rep;
  rep.rate_exact.resize(stats.U, ke);
  rep.rate_approx.resize(stats.U, ke);
  for (int k = 0; k < ke; ++k) {
    for (int u = 0; u < stats.U; ++u) {
      rep.rate_exact(u, k) = hardening_bound_exact(stats, bf, noise, u, k);
      rep.rate_approx(u, k) = hardening_bound_approx(stats, bf, noise, u, k);
    }
  }
  rep.objective = rep.rate_exact.sum() / ke;
  rep.sum_rate_bps =
      cfg.subcarrier_spacing_hz * cfg.num_subcarriers * rep.objective;
  return rep;
}

}  // namespace leobf
