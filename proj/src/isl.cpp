#include "leobf/isl.hpp"

#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

namespace leobf {

Topology Topology::ring(int S) {
  Topology t;
  t.kind = Kind::Ring;
  t.S = S;
  for (int s = 0; s < S; ++s) t.edges.emplace_back(s, (s + 1) % S);
  return t;
}

Topology Topology::star(int S, int center) {
  if (center < 0 || center >= S) throw std::invalid_argument("star: bad center");
  Topology t;
  t.kind = Kind::Star;
  t.S = S;
  t.center = center;
  for (int s = 0; s < S; ++s) {
    if (s == center) continue;
    t.edges.emplace_back(s, center);
    t.edges.emplace_back(center, s);
  }
  return t;
}

bool Topology::has_edge(int from, int to) const {
  for (const auto& e : edges) {
    if (e.first == from && e.second == to) return true;
  }
  return false;
}

long long intermediates_dims(int num_subcarriers, int num_uts) {
  const long long u = num_uts;
  return static_cast<long long>(num_subcarriers) * (u * u + 2 * u);
}

void MessageLedger::record_message(int iter, int from, int to,
                                   int num_subcarriers) {
  if (!topo_.has_edge(from, to)) {
    throw std::invalid_argument("record_message: no such edge in topology");
  }
  Record r;
  r.iter = iter;
  r.from = from;
  r.to = to;
  r.dims = intermediates_dims(num_subcarriers, U_);
  r.latency_units = 1;
  records_.push_back(r);
}

int MessageLedger::iterations() const {
  std::set<int> iters;
  for (const auto& r : records_) iters.insert(r.iter);
  return static_cast<int>(iters.size());
}

long long MessageLedger::latency_total() const {
  if (topo_.kind == Topology::Kind::Ring) {
    long long total = 0;
    for (const auto& r : records_) total += r.latency_units;
    return total;
  }
  return 2LL * iterations();
}

long long MessageLedger::overhead_per_iteration(Role role) const {
  if (records_.empty()) return 0;
  // Group by iteration and direction relative to the center.
  std::map<int, long long> ring_or_edge;  // per iter: dims of one link
  std::map<int, long long> center_out;
  for (const auto& r : records_) {
    if (role == Role::WholeRing || role == Role::StarEdge) {
      // All links carry identical payloads; remember one per iteration and
      // check uniformity.
      auto [it, inserted] = ring_or_edge.try_emplace(r.iter, r.dims);
      if (!inserted && it->second != r.dims) {
        throw std::runtime_error("ledger: ragged payloads within an iteration");
      }
    } else {
      if (r.from == topo_.center) center_out[r.iter] += r.dims;
    }
  }
  const auto& groups =
      role == Role::StarCenter ? center_out : ring_or_edge;
  long long value = -1;
  for (const auto& [iter, dims] : groups) {
    if (value < 0) value = dims;
    else if (value != dims) {
      throw std::runtime_error("ledger: per-iteration overhead not constant");
    }
  }
  return value < 0 ? 0 : value;
}

long long MessageLedger::total_dims() const {
  long long total = 0;
  for (const auto& r : records_) total += r.dims;
  return total;
}

long long MessageLedger::total_bytes(int scalar_width_bytes) const {
  // dims counts a complex f-entry as one dimension; on the wire it is two
  // scalars. Per subcarrier: f holds U of the U^2 + 2U dimensions.
  long long total = 0;
  const long long u = U_;
  const long long per_k_dims = u * u + 2 * u;
  const long long per_k_scalars = u * u + 3 * u;
  for (const auto& r : records_) {
    const long long ks = r.dims / per_k_dims;
    total += ks * per_k_scalars * scalar_width_bytes;
  }
  return total;
}

void MessageLedger::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("ledger: cannot write " + path);
  out << "iter,from,to,dims,latency_units\n";
  for (const auto& r : records_) {
    out << r.iter << ',' << r.from << ',' << r.to << ',' << r.dims << ','
        << r.latency_units << '\n';
  }
}

void MessageLedger::write_bytes_csv(const std::string& path,
                                    int scalar_width_bytes) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("ledger: cannot write " + path);
  const long long u = U_;
  const long long per_k_dims = u * u + 2 * u;
  const long long per_k_scalars = u * u + 3 * u;
  out << "iter,from,to,bytes\n";
  for (const auto& r : records_) {
    const long long bytes = r.dims / per_k_dims * per_k_scalars * scalar_width_bytes;
    out << r.iter << ',' << r.from << ',' << r.to << ',' << bytes << '\n';
  }
}

}  // namespace leobf
