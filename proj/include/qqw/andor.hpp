#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qqw/amplitude.hpp"
#include "qqw/oracle.hpp"
#include "qqw/rng.hpp"

namespace qqw {

enum class GateKind : std::uint8_t { And, Or };

// Layered AND-OR formula over N leaves: branching[L] children per node at
// level L, gates alternating by level starting from root_gate.
struct TreeShape {
  GateKind root_gate = GateKind::Or;
  std::vector<std::size_t> branching;

  std::size_t depth() const { return branching.size(); }
  std::size_t leaves() const;
  GateKind gate_at(std::size_t level) const;
  // Number of nodes at a level (level 0 is the root's children... level d is leaves).
  std::size_t nodes_at(std::size_t level) const;
  std::string id() const;

  void validate() const;
};

TreeShape uniform_shape(std::size_t n, std::size_t depth, GateKind root_gate = GateKind::Or);

// Two-level shape: AND of N^(1/3) ORs of N^(2/3) leaves (N a perfect cube).
TreeShape make_and_of_ors(std::size_t n);

// Forcing set: leaf values that pin the tree to claimed_value.
struct Certificate {
  std::vector<std::pair<std::uint32_t, std::uint8_t>> entries;  // sorted by index
  int claimed_value = 0;

  std::size_t size() const { return entries.size(); }
};

int eval_tree(const TreeShape& shape, std::span<const std::uint8_t> assignment);

// Classical baseline: reads all N leaves through the counted interface.
int eval_tree_oracle(const TreeShape& shape, BitOracle& oracle);

// Three-valued evaluation with unknowns (-1 entries); returns 0, 1, or -1.
int eval_tree_partial(const TreeShape& shape, std::span<const std::int8_t> partial);

// Reads exactly the certificate's indices (classical verification queries),
// checks the recorded values, then checks the partial assignment forces the
// tree to claimed_value.
bool verify_certificate(const TreeShape& shape, BitOracle& oracle, const Certificate& cert);

struct CandidateResult {
  std::size_t candidate = 0;  // child of the root; callers must verify
  QueryStats queries;
};

// Multi-level search for a root child whose subtree has the target value:
// inner evaluations are majority-amplified bounded-error evaluations one
// level down, and the top-level search runs against the resulting sampled
// table. With depth 1 this degenerates to the plain unknown-count search.
CandidateResult multilevel_grover(const TreeShape& shape, BitOracle& oracle, int target_value,
                                  Rng& rng);

struct CertSearchResult {
  std::optional<Certificate> certificate;
  QueryStats queries;
  bool exhausted = false;  // budget ran out (the expected outcome on wrong-value inputs)
};

inline constexpr double kDefaultRestartFactor = 10.0;

// Expected-cost estimate of the certificate finder, used for restart
// allowances and budget defaults.
double certificate_cost_estimate(const TreeShape& shape, int value);

// Finds a verified value-1 certificate; never terminates (exhausts the
// budget) when the tree evaluates to 0. find_zero_certificate is the dual.
CertSearchResult find_one_certificate(const TreeShape& shape, BitOracle& oracle, Rng& rng,
                                      double restart_factor, std::uint64_t budget);
CertSearchResult find_zero_certificate(const TreeShape& shape, BitOracle& oracle, Rng& rng,
                                       double restart_factor, std::uint64_t budget);

struct ZeroErrorVerdict {
  bool dont_know = true;
  int value = 0;
  Certificate certificate;  // meaningful when !dont_know; classically verified
  QueryStats queries;
  double cutoff_combined = 0.0;  // interleaved-query cutoff used for this run
};

struct ZeroErrorOptions {
  double cutoff_multiplier = 2.0;
  double restart_factor = kDefaultRestartFactor;
  // Calibrated expected combined queries; 0 means self-calibrate with a
  // pilot phase on this instance.
  double calibrated_expected = 0.0;
  std::size_t pilot_runs = 32;
};

// Runs the 1-certificate and 0-certificate finders side by side, strictly
// alternating after every charged query, and stops at cutoff_multiplier
// times the (calibrated) expected combined cost. A returned value always
// carries a certificate that was verified classically against the oracle.
ZeroErrorVerdict zero_error_evaluate(const TreeShape& shape, BitOracle& oracle, Rng& rng,
                                     const ZeroErrorOptions& opts = {});

// Pilot estimate of the expected combined (dovetailed) query count for
// inputs drawn from the given sampler.
double calibrate_zero_error(const TreeShape& shape,
                            const std::function<BitOracle(Rng&)>& sampler, Rng& rng,
                            std::size_t pilot_runs = 32,
                            double restart_factor = kDefaultRestartFactor);

enum class TreeInputClass { PlantedOne, PlantedZero, AllZero, AllOne, Random };

std::string tree_input_class_name(TreeInputClass c);

// Structured inputs: PlantedOne forces value 1 with one witness per OR on
// the witness path; PlantedZero forces value 0 the dual way.
BitOracle sample_tree_input(const TreeShape& shape, TreeInputClass input_class, Rng& rng);

}  // namespace qqw
