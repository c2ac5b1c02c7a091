#include "qqw/comm.hpp"

#include <cmath>
#include <stdexcept>

#include "qqw/report.hpp"

namespace qqw {

void Channel::record_round_trips(std::uint64_t queries, std::uint64_t width) {
  if (queries == 0) return;
  const std::uint64_t each_way = queries * width;
  qubits_sent += each_way;
  transcript.push_back({'A', each_way, qubits_sent});
  qubits_sent += each_way;
  transcript.push_back({'B', each_way, qubits_sent});
}

std::string Channel::transcript_lines() const {
  std::string out;
  for (const auto& e : transcript) {
    out += e.direction;
    out += ",";
    out += format_u64(e.payload_qubits);
    out += ",";
    out += format_u64(e.cumulative_qubits);
    out += "\n";
  }
  return out;
}

std::uint64_t query_qubit_width(std::size_t n) {
  std::uint64_t bits = 0;
  std::size_t v = n - 1;
  while (v > 0) {
    ++bits;
    v >>= 1;
  }
  if (n == 1) bits = 0;
  return bits + 1;
}

DistributedCertResult distributed_certificate(const CertRelationInstance& instance, Rng& rng,
                                              const ZeroErrorOptions& opts) {
  instance.shape.validate();
  const std::size_t n = instance.shape.leaves();
  if (instance.x.size() != n || instance.y.size() != n)
    throw std::invalid_argument("distributed_certificate: input lengths must equal N");

  std::vector<std::uint8_t> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = instance.x[i] & instance.y[i];

  DistributedCertResult result;
  const std::uint64_t width = query_qubit_width(n);

  // Calibrate once so retries reuse the same cutoff.
  ZeroErrorOptions run_opts = opts;
  if (run_opts.calibrated_expected <= 0.0) {
    Rng pilot = rng.child(0xC0);
    run_opts.calibrated_expected = calibrate_zero_error(
        instance.shape, [&](Rng&) { return BitOracle(std::vector<std::uint8_t>(z)); }, pilot,
        opts.pilot_runs, opts.restart_factor);
  }

  for (std::size_t attempt = 0;; ++attempt) {
    BitOracle oracle{std::vector<std::uint8_t>(z)};
    Rng attempt_rng = rng.child(attempt + 1);
    ZeroErrorVerdict verdict = zero_error_evaluate(instance.shape, oracle, attempt_rng, run_opts);
    result.queries += verdict.queries;
    result.channel.record_round_trips(verdict.queries.total(), width);
    if (!verdict.dont_know) {
      result.attempts = attempt + 1;
      result.value = verdict.value;
      result.raw = verdict.certificate;
      for (const auto& [idx, val] : verdict.certificate.entries) result.certificate.push_back(idx);
      return result;
    }
  }
}

bool verify_relation(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y,
                     std::span<const std::uint32_t> c, const TreeShape& shape) {
  const std::size_t n = shape.leaves();
  if (x.size() != n || y.size() != n) return false;
  std::vector<std::int8_t> partial(n, -1);
  for (std::uint32_t idx : c) {
    if (idx >= n) return false;
    partial[idx] = static_cast<std::int8_t>(x[idx] & y[idx]);
  }
  return eval_tree_partial(shape, partial) >= 0;
}

std::size_t disjointness_k_for(std::size_t n_padded) {
  const TreeShape shape = make_and_of_ors(n_padded);
  return shape.branching[0] * (shape.branching[1] - 1);
}

DisjointnessResult disjointness_via_certificates(std::span<const std::uint8_t> x,
                                                 std::span<const std::uint8_t> y,
                                                 std::size_t n_padded, Rng& rng,
                                                 const ZeroErrorOptions& opts) {
  const TreeShape shape = make_and_of_ors(n_padded);
  const std::size_t subtrees = shape.branching[0];
  const std::size_t width = shape.branching[1];
  const std::size_t k = subtrees * (width - 1);
  if (x.size() != k || y.size() != k)
    throw std::invalid_argument("disjointness: inputs must have length N^(1/3) (N^(2/3)-1)");

  // Public coin: both parties derive the same per-subtree permutations.
  Rng coin = rng.child(0xD15);
  CertRelationInstance instance;
  instance.shape = shape;
  instance.x.assign(n_padded, 0);
  instance.y.assign(n_padded, 0);
  std::vector<std::uint8_t> dummy(n_padded, 0);
  for (std::size_t s = 0; s < subtrees; ++s) {
    std::vector<std::uint32_t> perm(width);
    for (std::size_t i = 0; i < width; ++i) perm[i] = static_cast<std::uint32_t>(i);
    for (std::size_t i = 0; i + 1 < width; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(coin.below(width - i));
      std::swap(perm[i], perm[j]);
    }
    const std::size_t base = s * width;
    for (std::size_t i = 0; i + 1 < width; ++i) {
      instance.x[base + perm[i]] = x[s * (width - 1) + i];
      instance.y[base + perm[i]] = y[s * (width - 1) + i];
    }
    // The dummy variable sits at the last pre-permutation position.
    instance.x[base + perm[width - 1]] = 1;
    instance.y[base + perm[width - 1]] = 1;
    dummy[base + perm[width - 1]] = 1;
  }

  Rng protocol_rng = rng.child(1);
  DistributedCertResult cert = distributed_certificate(instance, protocol_rng, opts);

  DisjointnessResult result;
  result.k = k;
  result.n_padded = n_padded;
  result.queries = cert.queries;
  result.qubits_sent = cert.channel.qubits_sent;
  for (std::size_t i = 0; i < cert.raw.entries.size(); ++i) {
    const auto& [idx, val] = cert.raw.entries[i];
    if (val == 1 && !dummy[idx]) {
      result.output = 1;
      break;
    }
  }
  return result;
}

}  // namespace qqw
