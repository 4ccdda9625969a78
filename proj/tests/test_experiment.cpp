#include "doctest.h"
#include "leobf/experiment.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

using namespace leobf;
namespace fs = std::filesystem;

namespace {

ExperimentSpec tiny_spec(const std::string& out) {
  ExperimentSpec spec;
  spec.base.num_sats = 2;
  spec.base.num_uts = 3;
  spec.base.num_rfc = 2;
  spec.base.panel_nh = 4;
  spec.base.panel_nv = 4;
  spec.schemes = {Scheme::Mrt};
  spec.num_seeds = 1;
  spec.out_dir = out;
  spec.exec = Exec::Serial;
  return spec;
}

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

// Strips the wall_ms column (index 9), the only nondeterministic field.
std::string strip_wall(const std::string& row) {
  std::stringstream ss(row);
  std::string field, out;
  int idx = 0;
  while (std::getline(ss, field, ',')) {
    if (idx != 9) out += field + "|";
    ++idx;
  }
  return out;
}

}  // namespace

TEST_CASE("single scheme, one seed, no sweep: exactly one row") {
  const ExperimentSpec spec = tiny_spec("/tmp/leobf_exp1");
  const ResultTable table = run_experiment(spec);
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows[0].scheme == "mrt");
  CHECK(table.rows[0].status == "ok");
  CHECK(table.rows[0].sum_rate_bps > 0);
  CHECK(table.all_ok());
}

TEST_CASE("scheme and sweep-variable names round-trip") {
  for (const auto* name : {"central", "ring", "star", "mrt", "zf", "wmmse_s3",
                           "mrt_s3", "zf_s3"}) {
    auto s = scheme_from_name(name);
    REQUIRE(s.has_value());
    CHECK(scheme_name(*s) == name);
  }
  CHECK(!scheme_from_name("bogus").has_value());
  for (const auto* name : {"none", "power_dbm", "antennas", "rfc", "sats", "uts"}) {
    auto v = sweep_var_from_name(name);
    REQUIRE(v.has_value());
    CHECK(sweep_var_name(*v) == name);
  }
}

TEST_CASE("empty scheme list fails validation before any output") {
  ExperimentSpec spec = tiny_spec("/tmp/leobf_exp_never");
  spec.schemes.clear();
  CHECK_THROWS_AS(run_experiment(spec), ConfigError);
  CHECK(!fs::exists("/tmp/leobf_exp_never"));
}

TEST_CASE("sweep values must be strictly increasing") {
  ExperimentSpec spec = tiny_spec("/tmp/leobf_exp_bad");
  spec.sweep_var = SweepVar::PowerDbm;
  spec.sweep_values = {44.0, 42.0};
  CHECK_THROWS_AS(run_experiment(spec), ConfigError);
}

TEST_CASE("antenna sweep rejects non-square counts") {
  ExperimentSpec spec = tiny_spec("/tmp/leobf_exp_bad2");
  spec.sweep_var = SweepVar::Antennas;
  spec.sweep_values = {15.0};
  CHECK_THROWS_AS(run_experiment(spec), ConfigError);
}

TEST_CASE("mrt sum rate increases monotonically with the power budget") {
  ExperimentSpec spec = tiny_spec("/tmp/leobf_exp2");
  spec.sweep_var = SweepVar::PowerDbm;
  spec.sweep_values = {40, 42, 44, 46, 48, 50};
  const ResultTable table = run_experiment(spec);
  REQUIRE(table.rows.size() == 6);
  for (size_t i = 1; i < table.rows.size(); ++i) {
    CHECK(table.rows[i].sum_rate_bps > table.rows[i - 1].sum_rate_bps);
  }
}

TEST_CASE("grid shape: schemes x sweep values x seeds") {
  ExperimentSpec spec = tiny_spec("/tmp/leobf_exp3");
  spec.schemes = {Scheme::Mrt, Scheme::Zf};
  spec.sweep_var = SweepVar::PowerDbm;
  spec.sweep_values = {44, 50};
  spec.num_seeds = 3;
  const ResultTable table = run_experiment(spec);
  CHECK(table.rows.size() == 2 * 2 * 3);
}

TEST_CASE("power-sweep grid over all eight schemes has full row coverage") {
  ExperimentSpec spec = tiny_spec("/tmp/leobf_exp3b");
  spec.schemes = {Scheme::Central, Scheme::Ring,   Scheme::Star,
                  Scheme::Mrt,     Scheme::Zf,     Scheme::WmmseS3,
                  Scheme::MrtS3,   Scheme::ZfS3};
  spec.sweep_var = SweepVar::PowerDbm;
  spec.sweep_values = {40, 42, 44, 46, 48, 50};
  const ResultTable table = run_experiment(spec);
  CHECK(table.rows.size() == 8 * 6);
  CHECK(table.all_ok());
}

TEST_CASE("results.csv carries the pinned schema and deterministic content") {
  ExperimentSpec spec = tiny_spec("/tmp/leobf_exp4a");
  spec.schemes = {Scheme::Mrt, Scheme::Ring};
  const ResultTable t1 = run_experiment(spec);
  emit_outputs(t1, spec);
  spec.out_dir = "/tmp/leobf_exp4b";
  const ResultTable t2 = run_experiment(spec);
  emit_outputs(t2, spec);

  const auto a = read_lines("/tmp/leobf_exp4a/results.csv");
  const auto b = read_lines("/tmp/leobf_exp4b/results.csv");
  REQUIRE(a.size() == b.size());
  CHECK(a[0] ==
        "scheme,sweep_var,sweep_value,seed,sum_rate_bps,objective,iterations,"
        "latency_units,overhead_dims,wall_ms,status");
  for (size_t i = 1; i < a.size(); ++i) {
    CHECK(strip_wall(a[i]) == strip_wall(b[i]));
  }
}

TEST_CASE("parallel cell execution reproduces the serial table") {
  ExperimentSpec spec = tiny_spec("/tmp/leobf_exp_par");
  spec.schemes = {Scheme::Mrt, Scheme::Central};
  spec.num_seeds = 2;
  const ResultTable serial = run_experiment(spec);
  spec.exec = Exec::Parallel;
  const ResultTable parallel = run_experiment(spec);
  REQUIRE(serial.rows.size() == parallel.rows.size());
  for (size_t i = 0; i < serial.rows.size(); ++i) {
    CHECK(serial.rows[i].scheme == parallel.rows[i].scheme);
    CHECK(serial.rows[i].seed == parallel.rows[i].seed);
    CHECK(serial.rows[i].sum_rate_bps == parallel.rows[i].sum_rate_bps);
    CHECK(serial.rows[i].objective == parallel.rows[i].objective);
    CHECK(serial.rows[i].iterations == parallel.rows[i].iterations);
  }
}

TEST_CASE("chain-count sweep covers the single-chain and all-served edges") {
  ExperimentSpec spec = tiny_spec("/tmp/leobf_exp_rfc");
  spec.schemes = {Scheme::Central, Scheme::Ring, Scheme::Star, Scheme::Zf};
  spec.sweep_var = SweepVar::Rfc;
  spec.sweep_values = {1, 2, 4};  // T = 1, 2, and 3 (all users)
  const ResultTable table = run_experiment(spec);
  CHECK(table.all_ok());
}

TEST_CASE("single-user grids run cleanly") {
  ExperimentSpec spec = tiny_spec("/tmp/leobf_exp_ut1");
  spec.base.num_uts = 1;
  spec.schemes = {Scheme::Central, Scheme::Ring, Scheme::Star, Scheme::Mrt,
                  Scheme::Zf, Scheme::WmmseS3};
  const ResultTable table = run_experiment(spec);
  CHECK(table.all_ok());
  for (const auto& r : table.rows) CHECK(r.sum_rate_bps > 0);
}

TEST_CASE("summary means are recomputable from the raw rows") {
  ExperimentSpec spec = tiny_spec("/tmp/leobf_exp5");
  spec.num_seeds = 4;
  const ResultTable table = run_experiment(spec);
  emit_outputs(table, spec);
  double mean = 0;
  for (const auto& r : table.rows) mean += r.sum_rate_bps;
  mean /= table.rows.size();

  const auto lines = read_lines("/tmp/leobf_exp5/summary.csv");
  REQUIRE(lines.size() == 2);
  std::stringstream ss(lines[1]);
  std::string field;
  for (int i = 0; i <= 4; ++i) std::getline(ss, field, ',');
  CHECK(std::stod(field) == doctest::Approx(mean).epsilon(1e-9));
}

TEST_CASE("iterative schemes write convergence traces; ledgers for isl schemes") {
  ExperimentSpec spec = tiny_spec("/tmp/leobf_exp6");
  spec.schemes = {Scheme::Ring, Scheme::Central};
  const ResultTable table = run_experiment(spec);
  emit_outputs(table, spec);
  CHECK(fs::exists("/tmp/leobf_exp6/convergence_ring_1.csv"));
  CHECK(fs::exists("/tmp/leobf_exp6/convergence_central_1.csv"));
  CHECK(fs::exists("/tmp/leobf_exp6/ledger_ring_1.csv"));
  CHECK(!fs::exists("/tmp/leobf_exp6/ledger_central_1.csv"));
  const auto lines = read_lines("/tmp/leobf_exp6/ledger_ring_1.csv");
  CHECK(lines[0] == "iter,from,to,dims,latency_units");
  CHECK(fs::exists("/tmp/leobf_exp6/ledger_ring_1_bytes.csv"));
}

TEST_CASE("a sweep with two or more values emits an svg plot") {
  ExperimentSpec spec = tiny_spec("/tmp/leobf_exp7");
  spec.sweep_var = SweepVar::PowerDbm;
  spec.sweep_values = {44, 50};
  const ResultTable table = run_experiment(spec);
  emit_outputs(table, spec);
  REQUIRE(fs::exists("/tmp/leobf_exp7/plot_power_dbm.svg"));
  const auto lines = read_lines("/tmp/leobf_exp7/plot_power_dbm.svg");
  REQUIRE(!lines.empty());
  CHECK(lines[0].find("<svg") != std::string::npos);
  // per-value subdirectories hold the cell artifacts
  CHECK(fs::exists("/tmp/leobf_exp7/value_44"));
  CHECK(fs::exists("/tmp/leobf_exp7/value_50"));
}

TEST_CASE("a failing cell records an error row and the run continues") {
  ExperimentSpec spec = tiny_spec("/tmp/leobf_exp8");
  // An absurd power budget overflows to a non-finite rate in one cell only.
  spec.sweep_var = SweepVar::PowerDbm;
  spec.sweep_values = {50.0, 1e7};
  const ResultTable table = run_experiment(spec);
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[0].status == "ok");
  CHECK(table.rows[1].status != "ok");
  CHECK(!table.all_ok());
  emit_outputs(table, spec);  // error rows still land in the csv
  const auto lines = read_lines("/tmp/leobf_exp8/results.csv");
  CHECK(lines.size() == 3);
}

TEST_CASE("invalid sweep values are caught in validation") {
  ExperimentSpec spec = tiny_spec("/tmp/leobf_exp9");
  spec.sweep_var = SweepVar::Sats;
  spec.sweep_values = {0, 2};
  CHECK_THROWS_AS(run_experiment(spec), ConfigError);
}
