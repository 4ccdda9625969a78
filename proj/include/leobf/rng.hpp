#pragma once

#include <cstdint>
#include <string_view>

namespace leobf {

// Deterministic counter-seeded generator. Every consumer derives its own
// stream from (master seed, label, indices), so draws do not depend on
// evaluation order and modules can be tested in isolation.
class Rng {
 public:
  explicit Rng(uint64_t state) : state_(state) {}

  // Sub-stream keyed by a label and up to three indices.
  static Rng stream(uint64_t seed, std::string_view label, uint64_t a = 0,
                    uint64_t b = 0, uint64_t c = 0);

  uint64_t next_u64();
  double uniform();  // [0, 1)
  double uniform(double lo, double hi);
  double normal();   // standard normal
  double normal(double mean, double stddev);

 private:
  uint64_t state_;
};

}  // namespace leobf
