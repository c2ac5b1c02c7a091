#include "qqw/graphprops.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qqw {

GraphOracle::GraphOracle(std::size_t n, BitOracle oracle) : n_(n), oracle_(std::move(oracle)) {
  if (n < 2) throw std::invalid_argument("GraphOracle: need n >= 2");
  if (oracle_.size() != n * (n - 1))
    throw std::invalid_argument("GraphOracle: oracle length must be n(n-1)");
}

GraphOracle GraphOracle::complete(std::size_t n) {
  return GraphOracle(n, BitOracle(std::vector<std::uint8_t>(n * (n - 1), 1)));
}

GraphOracle GraphOracle::empty(std::size_t n) {
  return GraphOracle(n, BitOracle(std::vector<std::uint8_t>(n * (n - 1), 0)));
}

GraphOracle GraphOracle::from_edges(std::size_t n,
                                    const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::uint8_t> bits(n * (n - 1), 0);
  GraphOracle g(n, BitOracle(std::vector<std::uint8_t>(n * (n - 1), 0)));
  for (const auto& [i, j] : edges) bits[g.edge_index(i, j)] = 1;
  return GraphOracle(n, BitOracle(std::move(bits)));
}

GraphOracle GraphOracle::random(std::size_t n, double p, Rng& rng) {
  std::vector<std::uint8_t> bits(n * (n - 1));
  for (auto& b : bits) b = rng.bernoulli(p) ? 1 : 0;
  return GraphOracle(n, BitOracle(std::move(bits)));
}

GraphOracle GraphOracle::random_with_star(std::size_t n, double p, Rng& rng) {
  GraphOracle g = random(n, p, rng);
  std::vector<std::uint8_t> bits(g.oracle().bits(kHarness).begin(),
                                 g.oracle().bits(kHarness).end());
  const std::size_t center = static_cast<std::size_t>(rng.below(n));
  for (std::size_t j = 0; j < n; ++j)
    if (j != center) bits[g.edge_index(center, j)] = 1;
  return GraphOracle(n, BitOracle(std::move(bits)));
}

GraphOracle GraphOracle::random_starless(std::size_t n, double p, Rng& rng) {
  GraphOracle g = random(n, p, rng);
  std::vector<std::uint8_t> bits(g.oracle().bits(kHarness).begin(),
                                 g.oracle().bits(kHarness).end());
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = static_cast<std::size_t>(rng.below(n - 1));
    if (j >= i) ++j;  // pick an outgoing edge of i to delete
    bits[g.edge_index(i, j)] = 0;
  }
  return GraphOracle(n, BitOracle(std::move(bits)));
}

GraphOracle GraphOracle::hard_starless(std::size_t n, Rng& rng) {
  std::vector<std::uint8_t> bits(n * (n - 1), 1);
  GraphOracle probe = GraphOracle::empty(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = static_cast<std::size_t>(rng.below(n - 1));
    if (j >= i) ++j;
    bits[probe.edge_index(i, j)] = 0;
  }
  return GraphOracle(n, BitOracle(std::move(bits)));
}

GraphOracle GraphOracle::hard_star(std::size_t n, Rng& rng) {
  std::vector<std::uint8_t> bits(n * (n - 1), 1);
  GraphOracle probe = GraphOracle::empty(n);
  const std::size_t center = static_cast<std::size_t>(rng.below(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (i == center) continue;
    std::size_t j = static_cast<std::size_t>(rng.below(n - 1));
    if (j >= i) ++j;
    bits[probe.edge_index(i, j)] = 0;
  }
  return GraphOracle(n, BitOracle(std::move(bits)));
}

std::size_t GraphOracle::edge_index(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_ || i == j) throw std::invalid_argument("edge_index: bad pair");
  return i * (n_ - 1) + (j < i ? j : j - 1);
}

std::pair<std::size_t, std::size_t> GraphOracle::edge_unindex(std::size_t pos) const {
  if (pos >= edge_count_max()) throw std::invalid_argument("edge_unindex: out of range");
  const std::size_t i = pos / (n_ - 1);
  const std::size_t r = pos % (n_ - 1);
  return {i, r < i ? r : r + 1};
}

TreeShape star_shape(std::size_t n) {
  if (n < 2) throw std::invalid_argument("star_shape: need n >= 2");
  TreeShape shape;
  shape.root_gate = GateKind::Or;
  shape.branching = {n, n - 1};
  return shape;
}

StarVerdict star_zero_error(GraphOracle& graph, Rng& rng, const ZeroErrorOptions& opts) {
  const TreeShape shape = star_shape(graph.vertices());
  ZeroErrorVerdict verdict = zero_error_evaluate(shape, graph.oracle(), rng, opts);
  StarVerdict out;
  out.dont_know = verdict.dont_know;
  out.queries = verdict.queries;
  if (verdict.dont_know) return out;
  out.value = verdict.value;
  out.raw = verdict.certificate;
  out.certificate.value = verdict.value;
  const std::size_t per_vertex = graph.vertices() - 1;
  for (const auto& [idx, val] : verdict.certificate.entries) {
    const auto edge = graph.edge_unindex(idx);
    if (val == 1)
      out.certificate.edges.push_back(edge);
    else
      out.certificate.missing.push_back(edge);
  }
  if (verdict.value == 1 && !verdict.certificate.entries.empty())
    out.certificate.center = verdict.certificate.entries.front().first / per_vertex;
  return out;
}

std::uint64_t ones_in_binary(std::uint64_t n) {
  return static_cast<std::uint64_t>(std::popcount(n));
}

MajorityResult majority_exact(BitOracle& oracle) {
  const std::size_t n = oracle.size();
  const auto bits = oracle.bits(kHarness);
  MajorityResult result;

  // One block per weight: weight w holds 2^w items of equal value, tracked
  // by a representative index. Comparing two equal-weight representatives
  // costs one query; equal values merge, unequal cancel.
  std::vector<std::optional<std::size_t>> slot;
  for (std::size_t item = 0; item < n; ++item) {
    std::size_t rep = item;
    std::size_t w = 0;
    for (;;) {
      if (slot.size() <= w) slot.resize(w + 1);
      if (!slot[w]) {
        slot[w] = rep;
        break;
      }
      const std::size_t other = *slot[w];
      slot[w].reset();
      ++result.comparisons;
      oracle.charge_queries(1);
      if (bits[rep] == bits[other]) {
        rep = other;  // merged block of twice the size
        ++w;
      } else {
        break;  // cancel both blocks
      }
    }
  }

  std::optional<std::size_t> candidate;
  for (std::size_t w = slot.size(); w-- > 0;)
    if (slot[w]) {
      candidate = slot[w];
      break;
    }
  result.queries = result.comparisons;
  if (!candidate) {
    // Balanced input: every comparison cancelled. Ties resolve to 1.
    result.tie = true;
    result.value = 1;
    return result;
  }
  result.value = oracle.query(*candidate);
  ++result.queries;
  return result;
}

int majority_graph_property(GraphOracle& graph) {
  MajorityResult m = majority_exact(graph.oracle());
  if (m.tie) return 0;  // "more than half" is false on a balanced input
  return m.value;
}

EdgeExistsResult edge_exists(GraphOracle& graph, Rng& rng) {
  BitOracle& oracle = graph.oracle();
  // Cut off at three times the worst-case expected cost so misses happen
  // with probability at most 1/3.
  const auto cutoff = static_cast<std::uint64_t>(
                          std::ceil(3.0 * bbht_expected_queries(oracle.size(), 1))) +
                      2;
  SearchOutcome out = unknown_t_search(oracle, rng, kBbhtScheduleFactor, cutoff);
  EdgeExistsResult result;
  result.queries = out.queries;
  if (out.found) {
    result.value = 1;
    result.witness = graph.edge_unindex(*out.found);
  }
  return result;
}

}  // namespace qqw
