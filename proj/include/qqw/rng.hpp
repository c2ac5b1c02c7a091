#pragma once

#include <cstdint>

namespace qqw {

// Deterministic, splittable PRNG (xoshiro256** seeded through splitmix64).
// Every random decision in the workbench flows through this type, so a run
// is reproducible bit-for-bit from its seed on any platform. Child streams
// are derived per trial index, which keeps parallel trial batches
// independent of scheduling order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // Child stream for trial `index`; independent of draws made on the parent.
  Rng child(std::uint64_t index) const;

  std::uint64_t next();

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform();

  // Uniform integer in [0, n). Unbiased via rejection. n must be >= 1.
  std::uint64_t below(std::uint64_t n);

  bool bernoulli(double p);

  // Standard normal (Box-Muller); used only for random-unitary generation.
  double gaussian();

 private:
  std::uint64_t s_[4];
  double spare_gaussian_ = 0.0;
  bool has_spare_ = false;
};

struct RngSeed {
  std::uint64_t seed = 0;
};

}  // namespace qqw
