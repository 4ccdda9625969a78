#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "leobf/experiment.hpp"

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Networked-LEO downlink distributed beamforming simulator"};

  std::string config_path;
  std::string sweep_arg;
  std::string schemes_arg = "central,ring,star,mrt,zf,wmmse_s3,mrt_s3,zf_s3";
  int seeds = 10;
  int k_eval = 1;
  std::string out_dir = "out";
  bool verbose = false;

  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--sweep", sweep_arg,
                 "Sweep spec <var>=<v1,v2,...>; var in power_dbm|antennas|rfc|sats|uts");
  app.add_option("--schemes", schemes_arg, "Comma-separated scheme list");
  app.add_option("--seeds", seeds, "Number of seeds per grid cell");
  app.add_option("--k-eval", k_eval, "Evaluated subcarriers per run");
  app.add_option("--out", out_dir, "Output directory");
  app.add_flag("--verbose", verbose, "Print per-cell progress");

  CLI11_PARSE(app, argc, argv);

  try {
    leobf::ExperimentSpec spec;
    if (!config_path.empty()) {
      spec.base = leobf::load_config(config_path);
    }
    spec.num_seeds = seeds;
    spec.k_eval = k_eval;
    spec.out_dir = out_dir;
    spec.verbose = verbose;

    for (const std::string& name : split(schemes_arg, ',')) {
      if (name.empty()) continue;
      auto sch = leobf::scheme_from_name(name);
      if (!sch) {
        std::fprintf(stderr, "unknown scheme '%s'\n", name.c_str());
        return 2;
      }
      spec.schemes.push_back(*sch);
    }

    if (!sweep_arg.empty()) {
      const auto eq = sweep_arg.find('=');
      if (eq == std::string::npos) {
        std::fprintf(stderr, "--sweep expects <var>=<v1,v2,...>\n");
        return 2;
      }
      auto var = leobf::sweep_var_from_name(sweep_arg.substr(0, eq));
      if (!var) {
        std::fprintf(stderr, "unknown sweep variable '%s'\n",
                     sweep_arg.substr(0, eq).c_str());
        return 2;
      }
      spec.sweep_var = *var;
      for (const std::string& v : split(sweep_arg.substr(eq + 1), ',')) {
        if (!v.empty()) spec.sweep_values.push_back(std::stod(v));
      }
    }

    const leobf::ResultTable table = leobf::run_experiment(spec);
    leobf::emit_outputs(table, spec);

    int failed = 0;
    for (const auto& row : table.rows) {
      if (row.status != "ok") ++failed;
      if (verbose) {
        std::printf("%-9s %s=%-8g seed=%llu  rate=%.4g bps  obj=%.6g  it=%d  %s\n",
                    row.scheme.c_str(), row.sweep_var.c_str(), row.sweep_value,
                    static_cast<unsigned long long>(row.seed), row.sum_rate_bps,
                    row.objective, row.iterations, row.status.c_str());
      }
    }
    std::printf("%zu cells, %d failed; outputs in %s\n", table.rows.size(),
                failed, spec.out_dir.c_str());
    return failed == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
