#include "doctest.h"
#include "leobf/isl.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace leobf;

TEST_CASE("ring topology is one directed cycle") {
  const Topology t = Topology::ring(4);
  CHECK(t.edges.size() == 4);
  CHECK(t.has_edge(0, 1));
  CHECK(t.has_edge(3, 0));
  CHECK(!t.has_edge(1, 0));
  CHECK(!t.has_edge(0, 2));
}

TEST_CASE("star topology has both directions on every spoke") {
  const Topology t = Topology::star(5, 2);
  CHECK(t.edges.size() == 8);
  for (int s = 0; s < 5; ++s) {
    if (s == 2) continue;
    CHECK(t.has_edge(s, 2));
    CHECK(t.has_edge(2, s));
  }
  CHECK(!t.has_edge(0, 1));
}

TEST_CASE("payload dimensionality follows K (U^2 + 2U)") {
  CHECK(intermediates_dims(1024, 4) == 24576);
  CHECK(intermediates_dims(1, 16) == 288);
  CHECK(intermediates_dims(1, 1) == 3);
  CHECK(intermediates_dims(1024, 32) == 1114112);
}

TEST_CASE("messages on non-edges are rejected") {
  MessageLedger ledger(Topology::ring(4), 8);
  CHECK_THROWS_AS(ledger.record_message(0, 0, 2, 1), std::invalid_argument);
  CHECK_NOTHROW(ledger.record_message(0, 0, 1, 1));
}

TEST_CASE("ring latency counts one unit per sequential hop") {
  MessageLedger ledger(Topology::ring(4), 4);
  for (int loop = 0; loop < 4; ++loop) {
    for (int s = 0; s < 4; ++s) ledger.record_message(loop, s, (s + 1) % 4, 1);
  }
  CHECK(ledger.latency_total() == 16);  // 4 loops x 4 satellites
  CHECK(ledger.iterations() == 4);
}

TEST_CASE("star latency is two units per iteration, independent of S") {
  for (int S : {4, 8, 16, 32}) {
    MessageLedger ledger(Topology::star(S, 0), 4);
    for (int it = 0; it < 3; ++it) {
      for (int s = 1; s < S; ++s) {
        ledger.record_message(it, s, 0, 1);
        ledger.record_message(it, 0, s, 1);
      }
    }
    CHECK(ledger.latency_total() == 6);
  }
}

TEST_CASE("empty ledger has zero latency and overhead") {
  MessageLedger ledger(Topology::ring(3), 4);
  CHECK(ledger.latency_total() == 0);
  CHECK(ledger.total_dims() == 0);
  CHECK(ledger.overhead_per_iteration(MessageLedger::Role::WholeRing) == 0);
}

TEST_CASE("measured per-iteration overheads match the closed forms") {
  // Ring, U = 8, K = 1024: 1024 (64 + 16) = 81920 per link per iteration.
  MessageLedger ring(Topology::ring(4), 8);
  for (int loop = 0; loop < 3; ++loop) {
    for (int s = 0; s < 4; ++s) ring.record_message(loop, s, (s + 1) % 4, 1024);
  }
  CHECK(ring.overhead_per_iteration(MessageLedger::Role::WholeRing) == 81920);

  // Star center, S = 16, U = 32, K = 1024: 15 x 1024 x 1088 = 16711680.
  MessageLedger star(Topology::star(16, 0), 32);
  for (int it = 0; it < 2; ++it) {
    for (int s = 1; s < 16; ++s) {
      star.record_message(it, s, 0, 1024);
      star.record_message(it, 0, s, 1024);
    }
  }
  CHECK(star.overhead_per_iteration(MessageLedger::Role::StarEdge) == 1114112);
  CHECK(star.overhead_per_iteration(MessageLedger::Role::StarCenter) == 16711680);
}

TEST_CASE("bytes extension counts complex entries as two scalars") {
  MessageLedger ledger(Topology::ring(2), 4);
  ledger.record_message(0, 0, 1, 2);
  // dims = 2 (16 + 8) = 48; scalars = 2 (16 + 12) = 56; x8 bytes
  CHECK(ledger.total_dims() == 48);
  CHECK(ledger.total_bytes(8) == 448);
}

TEST_CASE("csv export carries the documented columns") {
  MessageLedger ledger(Topology::ring(3), 4);
  ledger.record_message(0, 0, 1, 1);
  ledger.record_message(0, 1, 2, 1);
  const std::string path = "/tmp/leobf_test_ledger.csv";
  ledger.write_csv(path);
  {
    std::ifstream in(path);
    std::string header, row;
    std::getline(in, header);
    CHECK(header == "iter,from,to,dims,latency_units");
    std::getline(in, row);
    CHECK(row == "0,0,1,24,1");
  }
  std::remove(path.c_str());
  ledger.write_bytes_csv(path);
  {
    std::ifstream in(path);
    std::string header, row;
    std::getline(in, header);
    CHECK(header == "iter,from,to,bytes");
    std::getline(in, row);
    CHECK(row == "0,0,1,224");
  }
  std::remove(path.c_str());
}
