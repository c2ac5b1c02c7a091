#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qqw/andor.hpp"
#include "qqw/oracle.hpp"

namespace qqw {

// Directed graph on n vertices behind a bit oracle of N = n(n-1) edge
// variables. Edge ordering: position(i, j) = i*(n-1) + (j if j < i else j-1),
// a dense bijection over ordered pairs with i != j.
class GraphOracle {
 public:
  GraphOracle(std::size_t n, BitOracle oracle);

  static GraphOracle complete(std::size_t n);
  static GraphOracle empty(std::size_t n);
  static GraphOracle from_edges(std::size_t n,
                                const std::vector<std::pair<std::size_t, std::size_t>>& edges);
  // Bernoulli(p) edges, then optionally plant a star center or knock one
  // outgoing edge out of every vertex.
  static GraphOracle random(std::size_t n, double p, Rng& rng);
  static GraphOracle random_with_star(std::size_t n, double p, Rng& rng);
  static GraphOracle random_starless(std::size_t n, double p, Rng& rng);
  // Near-extremal instances: the complete graph with one outgoing edge
  // removed per vertex (starless), or per non-center vertex (star). These
  // make both certificate sides genuinely search-bound.
  static GraphOracle hard_starless(std::size_t n, Rng& rng);
  static GraphOracle hard_star(std::size_t n, Rng& rng);

  std::size_t vertices() const { return n_; }
  std::size_t edge_count_max() const { return n_ * (n_ - 1); }

  std::size_t edge_index(std::size_t i, std::size_t j) const;
  std::pair<std::size_t, std::size_t> edge_unindex(std::size_t pos) const;

  BitOracle& oracle() { return oracle_; }
  const BitOracle& oracle() const { return oracle_; }

 private:
  std::size_t n_;
  BitOracle oracle_;
};

// The star property as a 2-level tree: OR over n centers of AND over the
// n-1 outgoing edges. The edge ordering above makes each center's edges a
// contiguous leaf block.
TreeShape star_shape(std::size_t n);

struct StarCertificate {
  int value = 0;
  std::optional<std::size_t> center;                      // value 1: the star center
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // confirmed edges (value 1)
  std::vector<std::pair<std::size_t, std::size_t>> missing;  // one absent edge per vertex (value 0)
};

struct StarVerdict {
  bool dont_know = true;
  int value = 0;
  StarCertificate certificate;
  Certificate raw;  // the underlying tree certificate
  QueryStats queries;
};

// Zero-error star detection with a classically verified certificate.
StarVerdict star_zero_error(GraphOracle& graph, Rng& rng, const ZeroErrorOptions& opts = {});

// Exact Majority by a pairing tournament: blocks of equal-valued items with
// power-of-two weights; equal-weight blocks are compared (1 query via the
// XOR comparison), unequal pairs cancel, equal pairs merge. At most
// N - e(N) comparisons plus one final read. Ties (possible only for even N)
// leave no survivors and resolve to 1 by convention.
struct MajorityResult {
  int value = 0;
  bool tie = false;
  std::uint64_t comparisons = 0;
  std::uint64_t queries = 0;  // comparisons + final read (when any)
};

MajorityResult majority_exact(BitOracle& oracle);

// Number of ones in the binary expansion.
std::uint64_t ones_in_binary(std::uint64_t n);

// The property "more than n(n-1)/2 edges": Majority with ties mapped to 0.
int majority_graph_property(GraphOracle& graph);

// Bounded-error (<= 1/3) edge existence via unknown-count search; one-sided.
struct EdgeExistsResult {
  int value = 0;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  QueryStats queries;
};

EdgeExistsResult edge_exists(GraphOracle& graph, Rng& rng);

}  // namespace qqw
