#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leobf/config.hpp"
#include "leobf/isl.hpp"
#include "leobf/types.hpp"

namespace leobf {

enum class Scheme { Central, Ring, Star, Mrt, Zf, WmmseS3, MrtS3, ZfS3 };

std::string scheme_name(Scheme s);
std::optional<Scheme> scheme_from_name(const std::string& name);

enum class SweepVar { None, PowerDbm, Antennas, Rfc, Sats, Uts };

std::string sweep_var_name(SweepVar v);
std::optional<SweepVar> sweep_var_from_name(const std::string& name);

struct ExperimentSpec {
  SystemConfig base;
  SweepVar sweep_var = SweepVar::None;
  std::vector<double> sweep_values;  // strictly increasing; empty iff None
  std::vector<Scheme> schemes;
  int num_seeds = 10;
  int k_eval = 1;
  std::string out_dir = "out";
  bool verbose = false;
  Exec exec = Exec::Parallel;

  void validate() const;  // throws ConfigError
};

struct ResultRow {
  std::string scheme;
  std::string sweep_var;
  double sweep_value = 0;
  uint64_t seed = 0;
  double sum_rate_bps = 0;
  double objective = 0;
  int iterations = 0;
  long long latency_units = 0;
  long long overhead_dims = 0;
  double wall_ms = 0;
  std::string status = "ok";
};

struct CellArtifacts {
  RVec trace;
  MessageLedger ledger;
  bool has_trace = false;
  bool has_ledger = false;
};

struct ResultTable {
  std::vector<ResultRow> rows;       // one per (value, seed, scheme) cell
  std::vector<CellArtifacts> cells;  // aligned with rows
  bool all_ok() const;
};

// Applies one sweep value to a config (antennas values must be perfect
// squares; the panel stays square).
SystemConfig apply_sweep(const SystemConfig& base, SweepVar var, double value);

// Runs the full sweep grid; failed cells record an error row and the run
// continues. Grid cells are independent jobs.
ResultTable run_experiment(const ExperimentSpec& spec);

// Writes results.csv, summary.csv, per-cell convergence and ledger CSVs,
// and a simple SVG line plot per sweep.
void emit_outputs(const ResultTable& table, const ExperimentSpec& spec);

}  // namespace leobf
