#include "leobf/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "leobf/wmmse.hpp"

namespace leobf {

BeamformerSet mrt_beamformers(const ChannelStats& stats, const Schedule& sched,
                              const AnalogBeamformer& analog, double budget) {
  BeamformerSet bf = BeamformerSet::zeros(sched, analog, stats.k_eval());
  for (int s = 0; s < stats.S; ++s) {
    for (int k = 0; k < stats.k_eval(); ++k) {
      CMat& W = bf.at(s, k);
      for (int u : sched.served[s]) {
        W.col(u) = stats.at(s, u).g.conjugate();
      }
      const double pw = bf.radiated_power(analog, s, k);
      if (pw > 0) {
        W *= std::sqrt(budget / pw);
      } else {
        W.setZero();  // all scheduled channels vanished
      }
    }
  }
  return bf;
}

ZfResult zf_beamformers(const ChannelStats& stats, const Schedule& sched,
                        const AnalogBeamformer& analog, double budget) {
  ZfResult res;
  res.bf = BeamformerSet::zeros(sched, analog, stats.k_eval());
  for (int s = 0; s < stats.S; ++s) {
    const auto& served = sched.served[s];
    const int T = static_cast<int>(served.size());
    if (T == 0) continue;
    CMat M(T, T);  // rows are g^T of the scheduled users
    for (int r = 0; r < T; ++r) {
      M.row(r) = stats.at(s, served[r]).g.transpose();
    }
    Eigen::JacobiSVD<CMat> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smax = svd.singularValues()(0);
    CMat Wdir;
    if (smax <= 0 || svd.singularValues()(T - 1) <= 1e-9 * smax) {
      // Rank-deficient stack: ridge fallback.
      const double eps = 1e-9 * smax;
      Wdir = (M.adjoint() * M + eps * CMat::Identity(T, T))
                 .ldlt()
                 .solve(M.adjoint());
      res.regularized = true;
    } else {
      CVec inv = svd.singularValues().cwiseInverse().cast<cplx>();
      Wdir = svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
    }
    for (int k = 0; k < stats.k_eval(); ++k) {
      CMat& W = res.bf.at(s, k);
      for (int r = 0; r < T; ++r) {
        W.col(served[r]) = Wdir.col(r);
      }
      const double pw = res.bf.radiated_power(analog, s, k);
      if (pw > 0) W *= std::sqrt(budget / pw);
    }
  }
  return res;
}

Schedule s3_assignment(const Scenario& scn, const SystemConfig& cfg) {
  const int S = cfg.num_sats, U = cfg.num_uts;
  Schedule sched;
  sched.S = S;
  sched.U = U;
  sched.mask.assign(static_cast<size_t>(S) * U, 0);
  sched.served.resize(S);

  std::vector<std::vector<int>> assigned(S);
  for (int u = 0; u < U; ++u) {
    int best = 0;
    double best_d = (scn.ut_positions[u] - scn.sat_positions[0]).norm();
    for (int s = 1; s < S; ++s) {
      const double d = (scn.ut_positions[u] - scn.sat_positions[s]).norm();
      if (d < best_d) {
        best = s;
        best_d = d;
      }
    }
    assigned[best].push_back(u);
  }
  for (int s = 0; s < S; ++s) {
    auto& users = assigned[s];
    if (static_cast<int>(users.size()) > cfg.num_rfc) {
      std::stable_sort(users.begin(), users.end(), [&](int a, int b) {
        const double da = (scn.ut_positions[a] - scn.sat_positions[s]).norm();
        const double db = (scn.ut_positions[b] - scn.sat_positions[s]).norm();
        return da < db;
      });
      users.resize(cfg.num_rfc);
    }
    std::sort(users.begin(), users.end());
    sched.served[s] = users;
    for (int u : users) sched.mask[s * U + u] = 1;
  }
  return sched;
}

namespace {

// Single-satellite view of one satellite's links, for isolated optimization.
ChannelStats isolate_satellite(const ChannelStats& stats, int s) {
  ChannelStats sub;
  sub.S = 1;
  sub.U = stats.U;
  sub.N = stats.N;
  sub.subcarriers = stats.subcarriers;
  sub.links.assign(stats.links.begin() + static_cast<size_t>(s) * stats.U,
                   stats.links.begin() + static_cast<size_t>(s + 1) * stats.U);
  return sub;
}

}  // namespace

S3Result s3_run(const SystemConfig& cfg, const Scenario& scn,
                const ChannelStats& base_stats, const NoiseModel& noise,
                S3Scheme scheme) {
  S3Result res;
  res.sched = s3_assignment(scn, cfg);
  res.analog = build_analog_beamformer(scn, res.sched, cfg);
  res.stats = base_stats;
  effective_channels(res.stats, res.analog, res.sched);

  const double budget = cfg.power_budget_w() / cfg.num_subcarriers;
  res.bf = BeamformerSet::zeros(res.sched, res.analog, res.stats.k_eval());

  for (int s = 0; s < cfg.num_sats; ++s) {
    if (res.sched.served[s].empty()) continue;  // zero beamformer, no power

    // Satellite-local problem: own links only, other satellites absent.
    ChannelStats sub = isolate_satellite(res.stats, s);
    Schedule sub_sched;
    sub_sched.S = 1;
    sub_sched.U = res.stats.U;
    sub_sched.served = {res.sched.served[s]};
    sub_sched.mask.assign(res.stats.U, 0);
    for (int u : res.sched.served[s]) sub_sched.mask[u] = 1;
    AnalogBeamformer sub_analog;
    sub_analog.F = {res.analog.F[s]};
    sub_analog.gram = {res.analog.gram[s]};

    BeamformerSet sub_bf;
    switch (scheme) {
      case S3Scheme::Mrt:
        sub_bf = mrt_beamformers(sub, sub_sched, sub_analog, budget);
        break;
      case S3Scheme::Zf:
        sub_bf = zf_beamformers(sub, sub_sched, sub_analog, budget).bf;
        break;
      case S3Scheme::Wmmse: {
        const BeamformerSet init =
            mrt_beamformers(sub, sub_sched, sub_analog, budget);
        sub_bf = run_central(sub, sub_sched, sub_analog, noise, cfg, init,
                             Exec::Serial)
                     .bf;
        break;
      }
    }
    for (int k = 0; k < res.stats.k_eval(); ++k) {
      res.bf.at(s, k) = sub_bf.at(0, k);
    }
  }

  res.report = sum_rate(res.stats, res.bf, noise, cfg);
  return res;
}

}  // namespace leobf
