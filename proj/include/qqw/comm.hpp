#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qqw/andor.hpp"
#include "qqw/oracle.hpp"

namespace qqw {

// Two-party certificate protocol simulated at the transcript/accounting
// level: Alice runs the certificate finder and every oracle access to
// z_j = x_j AND y_j costs one round trip of ceil(log2 N) + 1 qubits each way.

struct TranscriptEntry {
  char direction = 'A';  // 'A': Alice -> Bob, 'B': Bob -> Alice
  std::uint64_t payload_qubits = 0;
  std::uint64_t cumulative_qubits = 0;
};

struct Channel {
  std::uint64_t qubits_sent = 0;
  std::uint64_t classical_bits_sent = 0;
  std::vector<TranscriptEntry> transcript;

  // Records `queries` oracle round trips at the given per-direction width.
  void record_round_trips(std::uint64_t queries, std::uint64_t width);
  std::string transcript_lines() const;
};

std::uint64_t query_qubit_width(std::size_t n);  // ceil(log2 N) + 1

struct CertRelationInstance {
  std::vector<std::uint8_t> x;
  std::vector<std::uint8_t> y;
  TreeShape shape;
};

struct DistributedCertResult {
  int value = 0;
  std::vector<std::uint32_t> certificate;  // index set c
  Certificate raw;
  QueryStats queries;
  Channel channel;
  std::size_t attempts = 0;  // don't-know retries preserve zero-error semantics
};

// Runs the dovetailed certificate finder over z = x AND y, retrying on
// don't-know; communication equals 2 * queries * (ceil(log2 N) + 1) qubits.
DistributedCertResult distributed_certificate(const CertRelationInstance& instance, Rng& rng,
                                              const ZeroErrorOptions& opts = {});

// Membership test for the certificate relation: the values
// {(x_i, y_i) : i in c} must determine g(x AND y).
bool verify_relation(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y,
                     std::span<const std::uint32_t> c, const TreeShape& shape);

struct DisjointnessResult {
  int output = 0;
  std::uint64_t qubits_sent = 0;
  QueryStats queries;
  std::size_t k = 0;
  std::size_t n_padded = 0;
};

// Reduction from Disjointness on k = N^(1/3) (N^(2/3) - 1) bits: pad each
// subtree with a dummy 1, permute subtrees with public randomness, find a
// certificate for the padded instance, and answer 1 iff some certificate
// position is a non-dummy common 1. One-sided: never wrong on disjoint
// inputs; detects intersecting inputs with probability >= 1/2.
DisjointnessResult disjointness_via_certificates(std::span<const std::uint8_t> x,
                                                 std::span<const std::uint8_t> y,
                                                 std::size_t n_padded, Rng& rng,
                                                 const ZeroErrorOptions& opts = {});

std::size_t disjointness_k_for(std::size_t n_padded);

}  // namespace qqw
