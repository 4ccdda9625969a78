// Serial reference vs OpenMP kernels on representative workloads.

#include <benchmark/benchmark.h>

#include "leobf/baselines.hpp"
#include "leobf/channel.hpp"
#include "leobf/rate.hpp"
#include "leobf/scenario.hpp"
#include "leobf/schedule.hpp"
#include "leobf/wmmse.hpp"

using namespace leobf;

namespace {

struct Setup {
  SystemConfig cfg;
  Scenario scn;
  ChannelStats stats;
  Schedule sched;
  AnalogBeamformer analog;
  NoiseModel noise;
  BeamformerSet bf;
};

Setup make_setup(int S, int U, int nrf, int side, int k_eval) {
  Setup s;
  s.cfg.num_sats = S;
  s.cfg.num_uts = U;
  s.cfg.num_rfc = nrf;
  s.cfg.panel_nh = side;
  s.cfg.panel_nv = side;
  s.cfg.rng_seed = 1;
  s.scn = generate_scenario(s.cfg);
  s.stats = build_channel_stats(s.cfg, s.scn, k_eval, Exec::Serial);
  s.sched = schedule_users(s.scn, s.cfg);
  s.analog = build_analog_beamformer(s.scn, s.sched, s.cfg);
  effective_channels(s.stats, s.analog, s.sched);
  s.noise = NoiseModel::from_config(s.cfg);
  s.bf = mrt_beamformers(s.stats, s.sched, s.analog,
                         s.cfg.power_budget_w() / s.cfg.num_subcarriers);
  return s;
}

void bench_channel_build(benchmark::State& state, Exec exec) {
  SystemConfig cfg;
  cfg.num_sats = 8;
  cfg.num_uts = 32;
  cfg.panel_nh = 32;
  cfg.panel_nv = 32;
  const Scenario scn = generate_scenario(cfg);
  for (auto _ : state) {
    ChannelStats stats = build_channel_stats(cfg, scn, 16, exec);
    benchmark::DoNotOptimize(stats.links.data());
  }
}

void bench_mc_rate(benchmark::State& state, Exec exec) {
  const Setup s = make_setup(4, 16, 8, 16, 1);
  for (auto _ : state) {
    const McResult r =
        mc_ergodic_rate(s.stats, s.bf, s.noise, 0, 0, 100000, 7, exec);
    benchmark::DoNotOptimize(r.mean);
  }
}

void bench_central_wmmse(benchmark::State& state, Exec exec) {
  Setup s = make_setup(2, 8, 4, 8, 8);
  s.cfg.solver.wmmse_max_iters = 10;
  for (auto _ : state) {
    const WmmseResult r =
        run_central(s.stats, s.sched, s.analog, s.noise, s.cfg, s.bf, exec);
    benchmark::DoNotOptimize(r.iterations);
  }
}

}  // namespace

BENCHMARK_CAPTURE(bench_channel_build, serial, Exec::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bench_channel_build, openmp, Exec::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bench_mc_rate, serial, Exec::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bench_mc_rate, openmp, Exec::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bench_central_wmmse, serial, Exec::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bench_central_wmmse, openmp, Exec::Parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
