#include "qqw/statevector.hpp"

#include <cmath>
#include <stdexcept>

namespace qqw {
namespace {

void check_bits(const PureState& state, std::span<const std::uint8_t> bits) {
  if (bits.size() != state.n_index)
    throw std::invalid_argument("statevector: oracle length does not match state dimension");
}

}  // namespace

PureState PureState::zero(std::size_t n_index, int w_bits) {
  if (n_index == 0) throw std::invalid_argument("PureState: N must be >= 1");
  if (w_bits < 0 || w_bits > 20) throw std::invalid_argument("PureState: bad w_bits");
  PureState s;
  s.n_index = n_index;
  s.w_bits = w_bits;
  const std::size_t dim = n_index * (std::size_t{2} << w_bits);
  if (dim > kMaxAmplitudes) throw std::invalid_argument("PureState: dimension cap exceeded");
  s.amp.assign(dim, {0.0, 0.0});
  s.amp[0] = {1.0, 0.0};
  return s;
}

std::size_t PureState::index(std::size_t j, int b, std::size_t w) const {
  const std::size_t wdim = std::size_t{1} << w_bits;
  return (j * 2 + static_cast<std::size_t>(b)) * wdim + w;
}

double PureState::norm_sq() const {
  double s = 0.0;
  for (const auto& a : amp) s += std::norm(a);
  return s;
}

double PureState::acceptance() const {
  const std::size_t wdim = std::size_t{1} << w_bits;
  double p = 0.0;
  for (std::size_t j = 0; j < n_index; ++j)
    for (std::size_t w = 0; w < wdim; ++w) p += std::norm(amp[(j * 2 + 1) * wdim + w]);
  return std::min(1.0, p);
}

std::uint64_t Circuit::query_count() const {
  std::uint64_t c = 0;
  for (const auto& g : gates)
    if (std::holds_alternative<OracleXorGate>(g) || std::holds_alternative<OraclePhaseGate>(g)) ++c;
  return c;
}

void apply_oracle(PureState& state, std::span<const std::uint8_t> bits) {
  check_bits(state, bits);
  const std::size_t wdim = std::size_t{1} << state.w_bits;
  for (std::size_t j = 0; j < state.n_index; ++j) {
    if (!bits[j]) continue;
    for (std::size_t w = 0; w < wdim; ++w)
      std::swap(state.amp[(j * 2) * wdim + w], state.amp[(j * 2 + 1) * wdim + w]);
  }
}

void apply_phase_oracle(PureState& state, std::span<const std::uint8_t> bits) {
  check_bits(state, bits);
  const std::size_t sector = std::size_t{2} << state.w_bits;
  for (std::size_t j = 0; j < state.n_index; ++j) {
    if (!bits[j]) continue;
    for (std::size_t s = 0; s < sector; ++s) state.amp[j * sector + s] = -state.amp[j * sector + s];
  }
}

void apply_gate(PureState& state, const Gate& gate, std::span<const std::uint8_t> bits) {
  if (std::holds_alternative<OracleXorGate>(gate)) {
    apply_oracle(state, bits);
    return;
  }
  if (std::holds_alternative<OraclePhaseGate>(gate)) {
    apply_phase_oracle(state, bits);
    return;
  }
  if (std::holds_alternative<PrepUniformGate>(gate)) {
    // Householder reflection H = I - 2 v v^T with v = (e0 - u)/|e0 - u|;
    // maps |j=0> to the uniform vector and is its own inverse.
    const std::size_t n = state.n_index;
    if (n == 1) return;
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<double> v(n, -inv_sqrt_n);
    v[0] = 1.0 - inv_sqrt_n;
    double vnorm = 0.0;
    for (double x : v) vnorm += x * x;
    const double scale = 2.0 / vnorm;
    const std::size_t sector = std::size_t{2} << state.w_bits;
    for (std::size_t s = 0; s < sector; ++s) {
      std::complex<double> dot{0.0, 0.0};
      for (std::size_t j = 0; j < n; ++j) dot += v[j] * state.amp[j * sector + s];
      dot *= scale;
      for (std::size_t j = 0; j < n; ++j) state.amp[j * sector + s] -= dot * v[j];
    }
    return;
  }
  if (std::holds_alternative<DiffusionGate>(gate)) {
    // 2|u><u| - I on the j register.
    const std::size_t n = state.n_index;
    const std::size_t sector = std::size_t{2} << state.w_bits;
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t s = 0; s < sector; ++s) {
      std::complex<double> sum{0.0, 0.0};
      for (std::size_t j = 0; j < n; ++j) sum += state.amp[j * sector + s];
      const std::complex<double> mean2 = 2.0 * inv_n * sum;
      for (std::size_t j = 0; j < n; ++j) {
        auto& a = state.amp[j * sector + s];
        a = mean2 - a;
      }
    }
    return;
  }
  const auto& dense = std::get<DenseUnitaryGate>(gate);
  const std::size_t dim = state.dimension();
  if (dense.matrix.size() != dim * dim)
    throw std::invalid_argument("DenseUnitaryGate: matrix size does not match state dimension");
  std::vector<std::complex<double>> out(dim, {0.0, 0.0});
  for (std::size_t r = 0; r < dim; ++r) {
    std::complex<double> acc{0.0, 0.0};
    const auto* row = &dense.matrix[r * dim];
    for (std::size_t cidx = 0; cidx < dim; ++cidx) acc += row[cidx] * state.amp[cidx];
    out[r] = acc;
  }
  state.amp = std::move(out);
}

CircuitRun run_circuit(const Circuit& circuit, std::span<const std::uint8_t> bits) {
  const std::size_t dim = circuit.n_index * (std::size_t{2} << circuit.w_bits);
  if (dim > kMaxAmplitudes)
    throw std::invalid_argument("run_circuit: state space exceeds the amplitude cap");
  CircuitRun run;
  run.final_state = PureState::zero(circuit.n_index, circuit.w_bits);
  for (const auto& g : circuit.gates) apply_gate(run.final_state, g, bits);
  run.acceptance = run.final_state.acceptance();
  run.oracle_queries = circuit.query_count();
  return run;
}

AcceptanceTable acceptance_table(const Circuit& circuit, std::size_t n) {
  if (n > 12) throw std::invalid_argument("acceptance_table: N must be <= 12");
  if (circuit.n_index != n)
    throw std::invalid_argument("acceptance_table: circuit indexes a different N");
  AcceptanceTable table;
  table.n = n;
  table.prob.resize(std::size_t{1} << n);
  std::vector<std::uint8_t> bits(n);
  for (std::size_t mask = 0; mask < table.prob.size(); ++mask) {
    for (std::size_t i = 0; i < n; ++i) bits[i] = (mask >> i) & 1;
    table.prob[mask] = run_circuit(circuit, bits).acceptance;
  }
  return table;
}

Circuit grover_circuit(std::size_t n, std::uint64_t k) {
  Circuit c;
  c.n_index = n;
  c.w_bits = 0;
  c.gates.push_back(PrepUniformGate{});
  for (std::uint64_t i = 0; i < k; ++i) {
    c.gates.push_back(OraclePhaseGate{});
    c.gates.push_back(DiffusionGate{});
  }
  c.gates.push_back(OracleXorGate{});  // write the answer bit, verifying the sample
  return c;
}

std::vector<std::complex<double>> random_unitary(std::size_t dim, Rng& rng) {
  std::vector<std::complex<double>> m(dim * dim);
  for (auto& x : m) x = {rng.gaussian(), rng.gaussian()};
  // Gram-Schmidt on rows, two passes for orthogonality at machine precision.
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t p = 0; p < r; ++p) {
        std::complex<double> dot{0.0, 0.0};
        for (std::size_t cidx = 0; cidx < dim; ++cidx)
          dot += std::conj(m[p * dim + cidx]) * m[r * dim + cidx];
        for (std::size_t cidx = 0; cidx < dim; ++cidx) m[r * dim + cidx] -= dot * m[p * dim + cidx];
      }
      double norm = 0.0;
      for (std::size_t cidx = 0; cidx < dim; ++cidx) norm += std::norm(m[r * dim + cidx]);
      const double inv = 1.0 / std::sqrt(norm);
      for (std::size_t cidx = 0; cidx < dim; ++cidx) m[r * dim + cidx] *= inv;
    }
  }
  return m;
}

Circuit random_query_circuit(std::size_t n, int w_bits, std::uint64_t queries, Rng& rng) {
  Circuit c;
  c.n_index = n;
  c.w_bits = w_bits;
  const std::size_t dim = n * (std::size_t{2} << w_bits);
  c.gates.push_back(DenseUnitaryGate{random_unitary(dim, rng)});
  for (std::uint64_t q = 0; q < queries; ++q) {
    if (rng.below(2) == 0)
      c.gates.push_back(OracleXorGate{});
    else
      c.gates.push_back(OraclePhaseGate{});
    c.gates.push_back(DenseUnitaryGate{random_unitary(dim, rng)});
  }
  return c;
}

std::vector<double> outcome_distribution(const PureState& state) {
  const std::size_t wdim = std::size_t{1} << state.w_bits;
  std::vector<double> dist(state.n_index * 2, 0.0);
  for (std::size_t j = 0; j < state.n_index; ++j)
    for (int b = 0; b < 2; ++b) {
      double p = 0.0;
      for (std::size_t w = 0; w < wdim; ++w) p += std::norm(state.amp[(j * 2 + b) * wdim + w]);
      dist[j * 2 + b] = p;
    }
  return dist;
}

}  // namespace qqw
