#pragma once

#include <complex>
#include <cstdint>
#include <variant>
#include <vector>

#include "qqw/oracle.hpp"
#include "qqw/rng.hpp"

namespace qqw {

// Full state simulation of small query circuits on the basis |j, b, w>:
// an index register j in [0, N), the answer/output qubit b, and w_bits
// workspace qubits. Amplitude layout: index = (j*2 + b) * 2^w_bits + w,
// i.e. j * 2^(1+w_bits) + b * 2^w_bits + w. Fixed so tables reproduce.
struct PureState {
  std::size_t n_index = 1;  // size of the j register (need not be a power of 2)
  int w_bits = 0;
  std::vector<std::complex<double>> amp;

  static PureState zero(std::size_t n_index, int w_bits = 0);

  std::size_t dimension() const { return amp.size(); }
  std::size_t index(std::size_t j, int b, std::size_t w = 0) const;
  double norm_sq() const;
  // Probability that the output qubit b reads 1.
  double acceptance() const;
};

// Structured gates plus dense unitaries; no general gate compiler.
struct PrepUniformGate {};   // real orthogonal involution mapping |j=0> to uniform over j
struct DiffusionGate {};     // 2|u><u| - I on the j register, per (b, w) sector
struct OracleXorGate {};     // |j, b, w> -> |j, b ^ x_j, w>
struct OraclePhaseGate {};   // (-1)^{x_j} phase
struct DenseUnitaryGate {    // dense matrix over the full state space
  std::vector<std::complex<double>> matrix;  // row-major dim x dim
};

using Gate = std::variant<PrepUniformGate, DiffusionGate, OracleXorGate,
                          OraclePhaseGate, DenseUnitaryGate>;

struct Circuit {
  std::size_t n_index = 1;
  int w_bits = 0;
  std::vector<Gate> gates;

  std::uint64_t query_count() const;  // number of oracle gates
};

// Oracle gate application (the |j,b> -> |j,b^x_j> map). Norm preserving.
void apply_oracle(PureState& state, std::span<const std::uint8_t> oracle_bits);
void apply_phase_oracle(PureState& state, std::span<const std::uint8_t> oracle_bits);
void apply_gate(PureState& state, const Gate& gate, std::span<const std::uint8_t> oracle_bits);

inline constexpr std::size_t kMaxAmplitudes = std::size_t{1} << 22;

struct CircuitRun {
  double acceptance = 0.0;
  std::uint64_t oracle_queries = 0;
  PureState final_state;
};

// Runs the circuit from |0,0,0> against the given input bits. Refuses
// circuits whose state space exceeds kMaxAmplitudes.
CircuitRun run_circuit(const Circuit& circuit, std::span<const std::uint8_t> oracle_bits);

// Acceptance probability for every input x in {0,1}^N; N <= 12.
struct AcceptanceTable {
  std::size_t n = 0;
  std::vector<double> prob;  // indexed by input mask, bit i of mask = x_i
};

AcceptanceTable acceptance_table(const Circuit& circuit, std::size_t n);

// The standard search circuit: uniform preparation, k phase-oracle plus
// diffusion rounds, then one oracle write into the output qubit. Uses k+1
// queries and accepts exactly when the measured j is a solution.
Circuit grover_circuit(std::size_t n, std::uint64_t k);

// Haar-ish random unitary (Gaussian matrix + Gram-Schmidt), deterministic
// under the rng stream.
std::vector<std::complex<double>> random_unitary(std::size_t dim, Rng& rng);

// Random T-query circuit: dense unitaries interleaved with oracle gates.
Circuit random_query_circuit(std::size_t n, int w_bits, std::uint64_t queries, Rng& rng);

// Measurement distribution over (j, b) pairs, workspace traced out.
std::vector<double> outcome_distribution(const PureState& state);

}  // namespace qqw
