#include "leobf/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

#include "leobf/baselines.hpp"
#include "leobf/channel.hpp"
#include "leobf/rate.hpp"
#include "leobf/ring.hpp"
#include "leobf/scenario.hpp"
#include "leobf/schedule.hpp"
#include "leobf/star.hpp"
#include "leobf/wmmse.hpp"

namespace leobf {

namespace fs = std::filesystem;

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Central: return "central";
    case Scheme::Ring: return "ring";
    case Scheme::Star: return "star";
    case Scheme::Mrt: return "mrt";
    case Scheme::Zf: return "zf";
    case Scheme::WmmseS3: return "wmmse_s3";
    case Scheme::MrtS3: return "mrt_s3";
    case Scheme::ZfS3: return "zf_s3";
  }
  return "?";
}

std::optional<Scheme> scheme_from_name(const std::string& name) {
  static const std::map<std::string, Scheme> table = {
      {"central", Scheme::Central}, {"ring", Scheme::Ring},
      {"star", Scheme::Star},       {"mrt", Scheme::Mrt},
      {"zf", Scheme::Zf},           {"wmmse_s3", Scheme::WmmseS3},
      {"mrt_s3", Scheme::MrtS3},    {"zf_s3", Scheme::ZfS3}};
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

std::string sweep_var_name(SweepVar v) {
  switch (v) {
    case SweepVar::None: return "none";
    case SweepVar::PowerDbm: return "power_dbm";
    case SweepVar::Antennas: return "antennas";
    case SweepVar::Rfc: return "rfc";
    case SweepVar::Sats: return "sats";
    case SweepVar::Uts: return "uts";
  }
  return "?";
}

std::optional<SweepVar> sweep_var_from_name(const std::string& name) {
  static const std::map<std::string, SweepVar> table = {
      {"none", SweepVar::None},        {"power_dbm", SweepVar::PowerDbm},
      {"antennas", SweepVar::Antennas}, {"rfc", SweepVar::Rfc},
      {"sats", SweepVar::Sats},        {"uts", SweepVar::Uts}};
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

void ExperimentSpec::validate() const {
  base.validate();
  if (schemes.empty()) throw ConfigError("experiment: scheme list is empty");
  if (num_seeds < 1) throw ConfigError("experiment: num_seeds must be >= 1");
  if (k_eval < 1 || k_eval > base.num_subcarriers) {
    throw ConfigError("experiment: k_eval must be in [1, num_subcarriers]");
  }
  if (sweep_var == SweepVar::None) {
    if (!sweep_values.empty()) {
      throw ConfigError("experiment: sweep values given without a sweep variable");
    }
  } else {
    if (sweep_values.empty()) throw ConfigError("experiment: sweep values are empty");
    for (size_t i = 1; i < sweep_values.size(); ++i) {
      if (!(sweep_values[i] > sweep_values[i - 1])) {
        throw ConfigError("experiment: sweep values must be strictly increasing");
      }
    }
  }
  for (double v : sweep_values) {
    (void)apply_sweep(base, sweep_var, v);  // throws on invalid values
  }
}

SystemConfig apply_sweep(const SystemConfig& base, SweepVar var, double value) {
  SystemConfig cfg = base;
  switch (var) {
    case SweepVar::None:
      break;
    case SweepVar::PowerDbm:
      cfg.power_budget_dbm = value;
      break;
    case SweepVar::Antennas: {
      const int n = static_cast<int>(std::lround(value));
      const int side = static_cast<int>(std::lround(std::sqrt(double(n))));
      if (side * side != n || n < 1) {
        throw ConfigError("experiment: antennas sweep values must be perfect squares");
      }
      cfg.panel_nh = side;
      cfg.panel_nv = side;
      break;
    }
    case SweepVar::Rfc:
      cfg.num_rfc = static_cast<int>(std::lround(value));
      break;
    case SweepVar::Sats:
      cfg.num_sats = static_cast<int>(std::lround(value));
      break;
    case SweepVar::Uts:
      cfg.num_uts = static_cast<int>(std::lround(value));
      break;
  }
  cfg.validate();
  return cfg;
}

namespace {

struct CellOutcome {
  ResultRow row;
  CellArtifacts art;
};

CellOutcome run_cell(const SystemConfig& cfg, Scheme scheme, int k_eval,
                     uint64_t seed) {
  CellOutcome out;
  out.row.scheme = scheme_name(scheme);
  out.row.seed = seed;
  const auto t0 = std::chrono::steady_clock::now();

  const Scenario scn = generate_scenario(cfg);
  ChannelStats stats = build_channel_stats(cfg, scn, k_eval, Exec::Serial);
  const Schedule sched = schedule_users(scn, cfg);
  const AnalogBeamformer analog = build_analog_beamformer(scn, sched, cfg);
  effective_channels(stats, analog, sched);
  const NoiseModel noise = NoiseModel::from_config(cfg);
  const double budget = cfg.power_budget_w() / cfg.num_subcarriers;

  RateReport report;
  switch (scheme) {
    case Scheme::Central: {
      const BeamformerSet init = mrt_beamformers(stats, sched, analog, budget);
      const WmmseResult res =
          run_central(stats, sched, analog, noise, cfg, init, Exec::Serial);
      report = sum_rate(stats, res.bf, noise, cfg);
      out.row.iterations = res.iterations;
      out.art.trace = res.trace;
      out.art.has_trace = true;
      break;
    }
    case Scheme::Ring: {
      out.art.ledger = MessageLedger(Topology::ring(cfg.num_sats), cfg.num_uts);
      out.art.has_ledger = true;
      const BeamformerSet init = mrt_beamformers(stats, sched, analog, budget);
      const RingResult res = run_ring(stats, sched, analog, noise, cfg, init,
                                      &out.art.ledger);
      report = sum_rate(stats, res.bf, noise, cfg);
      out.row.iterations = res.loops;
      out.art.trace = res.trace;
      out.art.has_trace = true;
      break;
    }
    case Scheme::Star: {
      out.art.ledger = MessageLedger(Topology::star(cfg.num_sats, 0), cfg.num_uts);
      out.art.has_ledger = true;
      const BeamformerSet init = mrt_beamformers(stats, sched, analog, budget);
      const StarResult res = run_star(stats, sched, analog, noise, cfg, init, 0,
                                      &out.art.ledger);
      report = sum_rate(stats, res.bf, noise, cfg);
      out.row.iterations = res.iterations;
      out.art.trace = res.trace;
      out.art.has_trace = true;
      break;
    }
    case Scheme::Mrt:
      report = sum_rate(stats, mrt_beamformers(stats, sched, analog, budget),
                        noise, cfg);
      break;
    case Scheme::Zf:
      report = sum_rate(stats, zf_beamformers(stats, sched, analog, budget).bf,
                        noise, cfg);
      break;
    case Scheme::WmmseS3:
      report = s3_run(cfg, scn, stats, noise, S3Scheme::Wmmse).report;
      break;
    case Scheme::MrtS3:
      report = s3_run(cfg, scn, stats, noise, S3Scheme::Mrt).report;
      break;
    case Scheme::ZfS3:
      report = s3_run(cfg, scn, stats, noise, S3Scheme::Zf).report;
      break;
  }

  if (!std::isfinite(report.sum_rate_bps)) {
    throw std::runtime_error("non-finite sum rate");
  }
  out.row.sum_rate_bps = report.sum_rate_bps;
  out.row.objective = report.objective;
  if (out.art.has_ledger) {
    out.row.latency_units = out.art.ledger.latency_total();
    out.row.overhead_dims = out.art.ledger.total_dims();
  }
  const auto t1 = std::chrono::steady_clock::now();
  out.row.wall_ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count();
  return out;
}

std::string sanitize(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return s;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

bool ResultTable::all_ok() const {
  for (const auto& r : rows) {
    if (r.status != "ok") return false;
  }
  return true;
}

ResultTable run_experiment(const ExperimentSpec& spec) {
  spec.validate();

  struct Job {
    double value = 0;
    uint64_t seed = 0;
    Scheme scheme;
  };
  std::vector<Job> jobs;
  const std::vector<double> values =
      spec.sweep_var == SweepVar::None ? std::vector<double>{0.0} : spec.sweep_values;
  for (double v : values) {
    for (int i = 0; i < spec.num_seeds; ++i) {
      for (Scheme sch : spec.schemes) {
        jobs.push_back(Job{v, spec.base.rng_seed + static_cast<uint64_t>(i), sch});
      }
    }
  }

  ResultTable table;
  table.rows.resize(jobs.size());
  table.cells.resize(jobs.size());

  const int n = static_cast<int>(jobs.size());
#pragma omp parallel for schedule(dynamic) if (spec.exec == Exec::Parallel)
  for (int j = 0; j < n; ++j) {
    const Job& job = jobs[j];
    ResultRow fallback;
    fallback.scheme = scheme_name(job.scheme);
    fallback.seed = job.seed;
    try {
      SystemConfig cfg = apply_sweep(spec.base, spec.sweep_var, job.value);
      cfg.rng_seed = job.seed;
      CellOutcome out = run_cell(cfg, job.scheme, spec.k_eval, job.seed);
      table.rows[j] = std::move(out.row);
      table.cells[j] = std::move(out.art);
    } catch (const std::exception& e) {
      fallback.status = "error: " + sanitize(e.what());
      table.rows[j] = fallback;
    }
    table.rows[j].sweep_var = sweep_var_name(spec.sweep_var);
    table.rows[j].sweep_value = job.value;
  }
  return table;
}

namespace {

void write_results_csv(const ResultTable& table, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "scheme,sweep_var,sweep_value,seed,sum_rate_bps,objective,iterations,"
         "latency_units,overhead_dims,wall_ms,status\n";
  for (const auto& r : table.rows) {
    out << r.scheme << ',' << r.sweep_var << ',' << fmt(r.sweep_value) << ','
        << r.seed << ',' << fmt(r.sum_rate_bps) << ',' << fmt(r.objective)
        << ',' << r.iterations << ',' << r.latency_units << ','
        << r.overhead_dims << ',' << fmt(r.wall_ms) << ',' << r.status << '\n';
  }
}

void write_summary_csv(const ResultTable& table, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "scheme,sweep_var,sweep_value,num_ok,mean_sum_rate_bps,"
         "se_sum_rate_bps,mean_objective,mean_iterations\n";
  std::map<std::pair<std::string, double>, std::vector<const ResultRow*>> groups;
  for (const auto& r : table.rows) {
    if (r.status == "ok") groups[{r.scheme, r.sweep_value}].push_back(&r);
  }
  for (const auto& [key, rows] : groups) {
    const int n = static_cast<int>(rows.size());
    double mean = 0, mean_obj = 0, mean_it = 0;
    for (const auto* r : rows) {
      mean += r->sum_rate_bps;
      mean_obj += r->objective;
      mean_it += r->iterations;
    }
    mean /= n;
    mean_obj /= n;
    mean_it /= n;
    double var = 0;
    for (const auto* r : rows) {
      var += (r->sum_rate_bps - mean) * (r->sum_rate_bps - mean);
    }
    const double se = n > 1 ? std::sqrt(var / (n - 1.0) / n) : 0.0;
    out << key.first << ',' << rows[0]->sweep_var << ',' << fmt(key.second)
        << ',' << n << ',' << fmt(mean) << ',' << fmt(se) << ','
        << fmt(mean_obj) << ',' << fmt(mean_it) << '\n';
  }
}

void write_svg_plot(const ResultTable& table, const ExperimentSpec& spec,
                    const fs::path& path) {
  // Mean sum rate vs sweep value, one polyline per scheme.
  std::map<std::string, std::map<double, std::pair<double, int>>> series;
  for (const auto& r : table.rows) {
    if (r.status != "ok") continue;
    auto& acc = series[r.scheme][r.sweep_value];
    acc.first += r.sum_rate_bps;
    acc.second += 1;
  }
  if (series.empty()) return;
  double xmin = 1e300, xmax = -1e300, ymax = 0;
  for (auto& [name, pts] : series) {
    for (auto& [x, acc] : pts) {
      const double y = acc.first / acc.second;
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymax = std::max(ymax, y);
    }
  }
  if (!(xmax > xmin) || !(ymax > 0)) return;

  const double W = 640, H = 400, ml = 70, mr = 20, mt = 20, mb = 40;
  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
  auto py = [&](double y) { return H - mb - y / ymax * (H - mt - mb); };
  static const char* colors[] = {"#0072bd", "#d95319", "#edb120", "#7e2f8e",
                                 "#77ac30", "#4dbeee", "#a2142f", "#666666"};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='"
      << H << "' viewBox='0 0 " << W << ' ' << H << "'>\n";
  out << "<rect width='100%' height='100%' fill='white'/>\n";
  out << "<line x1='" << ml << "' y1='" << H - mb << "' x2='" << W - mr
      << "' y2='" << H - mb << "' stroke='black'/>\n";
  out << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='"
      << H - mb << "' stroke='black'/>\n";
  out << "<text x='" << ml << "' y='" << H - mb + 24 << "' font-size='12'>"
      << fmt(xmin) << "</text>\n";
  out << "<text x='" << W - mr - 40 << "' y='" << H - mb + 24
      << "' font-size='12'>" << fmt(xmax) << "</text>\n";
  out << "<text x='4' y='" << py(ymax) + 4 << "' font-size='12'>" << fmt(ymax)
      << "</text>\n";
  out << "<text x='4' y='" << H - mb << "' font-size='12'>0</text>\n";
  out << "<text x='" << (W / 2 - 60) << "' y='" << H - 8
      << "' font-size='12'>" << sweep_var_name(spec.sweep_var)
      << "</text>\n";
  out << "<text x='8' y='14' font-size='12'>sum rate [bps]</text>\n";
  int ci = 0;
  double ly = mt + 10;
  for (const auto& [name, pts] : series) {
    const char* color = colors[ci % 8];
    out << "<polyline fill='none' stroke='" << color << "' stroke-width='2' points='";
    for (const auto& [x, acc] : pts) {
      out << px(x) << ',' << py(acc.first / acc.second) << ' ';
    }
    out << "'/>\n";
    out << "<rect x='" << W - mr - 150 << "' y='" << ly - 9
        << "' width='10' height='10' fill='" << color << "'/>\n";
    out << "<text x='" << W - mr - 135 << "' y='" << ly << "' font-size='12'>"
        << name << "</text>\n";
    ly += 16;
    ++ci;
  }
  out << "</svg>\n";
}

}  // namespace

void emit_outputs(const ResultTable& table, const ExperimentSpec& spec) {
  if (table.rows.empty()) throw std::runtime_error("emit_outputs: empty table");
  const fs::path dir(spec.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string());

  write_results_csv(table, dir / "results.csv");
  write_summary_csv(table, dir / "summary.csv");

  const bool multi_value = spec.sweep_var != SweepVar::None &&
                           spec.sweep_values.size() > 1;
  for (size_t i = 0; i < table.rows.size(); ++i) {
    const ResultRow& r = table.rows[i];
    const CellArtifacts& art = table.cells[i];
    if (r.status != "ok") continue;
    fs::path cell_dir = dir;
    if (multi_value) {
      cell_dir = dir / ("value_" + fmt(r.sweep_value));
      fs::create_directories(cell_dir, ec);
    }
    if (art.has_trace) {
      const fs::path p =
          cell_dir / ("convergence_" + r.scheme + "_" + std::to_string(r.seed) + ".csv");
      std::ofstream out(p);
      out << "iteration,objective\n";
      for (int t = 0; t < art.trace.size(); ++t) {
        out << t << ',' << fmt(art.trace[t]) << '\n';
      }
    }
    if (art.has_ledger) {
      const std::string stem = "ledger_" + r.scheme + "_" + std::to_string(r.seed);
      art.ledger.write_csv((cell_dir / (stem + ".csv")).string());
      art.ledger.write_bytes_csv((cell_dir / (stem + "_bytes.csv")).string());
    }
  }

  if (spec.sweep_var != SweepVar::None && spec.sweep_values.size() >= 2) {
    write_svg_plot(table, spec,
                   dir / ("plot_" + sweep_var_name(spec.sweep_var) + ".svg"));
  }
}

}  // namespace leobf
