#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "leobf/types.hpp"

namespace leobf {

struct Topology {
  enum class Kind { Ring, Star };
  Kind kind = Kind::Ring;
  int S = 0;
  int center = -1;  // Star only
  std::vector<std::pair<int, int>> edges;  // directed

  static Topology ring(int S);
  static Topology star(int S, int center);
  bool has_edge(int from, int to) const;
};

// Per-run record of ISL messages. One message carries the full set of
// intermediates for every evaluated subcarrier: K (U^2 + 2U) scalar
// dimensions (complex entries count as one dimension).
class MessageLedger {
 public:
  struct Record {
    int iter = 0;
    int from = 0;
    int to = 0;
    long long dims = 0;
    int latency_units = 1;
  };

  MessageLedger() = default;
  MessageLedger(Topology topo, int num_uts) : topo_(std::move(topo)), U_(num_uts) {}

  void record_message(int iter, int from, int to, int num_subcarriers);

  const std::vector<Record>& records() const { return records_; }
  const Topology& topology() const { return topo_; }
  int num_uts() const { return U_; }
  int iterations() const;

  // Ring: hops are sequential, one unit each. Star: the parallel edge
  // exchanges of one iteration cost one unit in plus one unit out.
  long long latency_total() const;

  enum class Role { WholeRing, StarEdge, StarCenter };
  // Measured per-iteration dimensionality for the given role (one
  // direction); throws if the ledger is ragged across iterations.
  long long overhead_per_iteration(Role role) const;

  long long total_dims() const;
  // Bytes-on-the-wire extension: complex entries count 2 scalars.
  long long total_bytes(int scalar_width_bytes) const;

  // Columns: iter,from,to,dims,latency_units.
  void write_csv(const std::string& path) const;
  // Extension report in wire bytes: iter,from,to,bytes.
  void write_bytes_csv(const std::string& path, int scalar_width_bytes = 8) const;

 private:
  Topology topo_;
  int U_ = 0;
  std::vector<Record> records_;
};

long long intermediates_dims(int num_subcarriers, int num_uts);

}  // namespace leobf
