#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qqw/rng.hpp"

namespace qqw {

// Query accounting split between the quantum search phase and the classical
// certificate-verification phase. Reported costs are always the sum.
struct QueryStats {
  std::uint64_t quantum = 0;
  std::uint64_t classical_verification = 0;

  std::uint64_t total() const { return quantum + classical_verification; }

  QueryStats& operator+=(const QueryStats& o) {
    quantum += o.quantum;
    classical_verification += o.classical_verification;
    return *this;
  }
};

// Capability token for oracle internals. The simulation engines and the test
// harness hold it; algorithm-level code must not, and goes through query()
// and charge_queries() instead. That keeps query counts trustworthy by
// construction: an algorithm physically cannot look at the input for free.
struct HarnessKey {
  explicit constexpr HarnessKey() = default;
};
inline constexpr HarnessKey kHarness{};

// A black-box input x in {0,1}^N with exact query accounting. Bits are
// immutable after construction; the counter never decreases.
class BitOracle {
 public:
  explicit BitOracle(std::vector<std::uint8_t> bits);

  // Oracle with exactly t ones at uniformly random positions.
  static BitOracle planted(std::size_t n, std::size_t t, Rng& rng);

  std::size_t size() const { return bits_.size(); }
  std::uint64_t query_count() const { return query_count_; }

  // Counted read of bit j; the only input access available to algorithms.
  int query(std::size_t j);

  // Bulk accounting for simulated quantum work: one unit per oracle-gate
  // application performed inside an engine.
  void charge_queries(std::uint64_t n) { query_count_ += n; }

  // Engine/harness access below. Free of charge and invisible to
  // query_count; never available to algorithm code.
  std::span<const std::uint8_t> bits(HarnessKey) const { return bits_; }
  std::size_t hamming_weight(HarnessKey) const;
  // Sorted indices of the 1-bits, built lazily on first use.
  std::span<const std::uint32_t> solutions(HarnessKey) const;

 private:
  std::vector<std::uint8_t> bits_;
  std::uint64_t query_count_ = 0;
  mutable std::vector<std::uint32_t> solutions_;
  mutable bool solutions_built_ = false;
};

inline std::size_t hamming_weight(const BitOracle& o, HarnessKey k) {
  return o.hamming_weight(k);
}

}  // namespace qqw
