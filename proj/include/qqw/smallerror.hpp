#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qqw/amplitude.hpp"
#include "qqw/oracle.hpp"
#include "qqw/rng.hpp"

namespace qqw {

// Search with a target one-sided error eps. Stage one runs the exact search
// for every promised count t = 1..t0 (t0 = ceil(log2(1/eps))), so inputs
// with at most t0 solutions are found with certainty. Stage two runs t0
// amplification rounds whose failure probability is at most 1/2 for every
// input with more than t0 solutions, giving total error <= 2^-t0 <= eps.
// The amplification rounds use the fixed-point iteration schedule, which
// keeps that 1/2 bound valid for every solution count at once and keeps the
// per-run failure available in closed form.
struct SmallErrorPlan {
  std::size_t n = 0;
  double eps = 0.0;
  std::size_t t0 = 0;
  FixedPointPlan amplifier;
  std::uint64_t worst_case_queries = 0;  // full budget if every stage runs
  double bound_2_45 = 0.0;               // 2.45 sqrt(N log2(1/eps))
  double additive_c0 = 0.0;              // worst_case_queries - bound_2_45
};

SmallErrorPlan plan_small_error_search(std::size_t n, double eps);

SearchOutcome small_error_search(BitOracle& oracle, double eps, Rng& rng);
SearchOutcome small_error_search(BitOracle& oracle, const SmallErrorPlan& plan, Rng& rng);

// Closed-form failure probability on an input with exactly t_true solutions.
double small_error_analytic_error(const SmallErrorPlan& plan, std::size_t t_true);

// Worst failure probability over the promise class {t' >= max(t_min, 1)}.
double small_error_worst_error(const SmallErrorPlan& plan, std::size_t t_min);

// Amplification by repetition for a known promised count: ceil(log2(1/eps))
// runs of the unknown-count search, each cut off at twice its expected cost
// so a single run fails with probability <= 1/2.
struct RepeatSearchPlan {
  std::size_t n = 0;
  std::size_t t_promise = 0;
  std::size_t reps = 0;
  std::uint64_t cutoff_per_rep = 0;
  double expected_per_rep = 0.0;
};

RepeatSearchPlan plan_repeat_search(std::size_t n, std::size_t t_promise, double eps);

SearchOutcome repeat_search(BitOracle& oracle, std::size_t t_promise, double eps, Rng& rng);
SearchOutcome repeat_search(BitOracle& oracle, const RepeatSearchPlan& plan, Rng& rng);

// Per-input failure probability of the repeat plan (capped-schedule DP).
double repeat_search_analytic_error(const RepeatSearchPlan& plan, std::size_t t_true);

// One experiment point of the trade-off sweep.
struct TradeoffGridPoint {
  std::size_t n = 0;
  std::size_t t = 0;
  double eps = 0.0;
};

struct TradeoffRecord {
  std::size_t n = 0;
  std::size_t t = 0;
  double q = 0.0;  // t / N
  double eps_target = 0.0;
  double eps_measured = 0.0;  // Monte Carlo failure rate on planted-t inputs
  double eps_analytic = 0.0;  // worst-case error over the promise class
  double t_mean = 0.0;
  std::uint64_t t_max = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  // Extra fields kept out of the CSV schema:
  std::uint64_t t_budget = 0;  // planned worst-case queries of the chosen method
  std::string method;          // "staged-exact" or "repeat"
};

// For each grid point, runs the cheaper of the two constructions (staged
// exact ladder vs repeated search) and records measured and analytic errors.
std::vector<TradeoffRecord> tradeoff_sweep(const std::vector<TradeoffGridPoint>& grid,
                                           std::size_t trials, RngSeed seed,
                                           std::size_t jobs = 1);

std::string tradeoff_csv(const std::vector<TradeoffRecord>& records);
std::string tradeoff_json(const std::vector<TradeoffRecord>& records);

// One-sided amplification of a classical algorithm exposed as an oracle over
// its sample space: verdict 1 means a verified accepting coin was found.
struct AmplifyVerdict {
  int verdict = 0;
  QueryStats calls;
};

// Known sample space size: searching it and deciding acceptance coincide.
AmplifyVerdict amplify_one_sided(BitOracle& algorithm, double eps, Rng& rng);

// Unknown sample space, known acceptance fraction q: fixed-point
// amplification to success 1/2 followed by ceil(log2(1/eps)) repetitions,
// O(log(1/eps)/sqrt(q)) calls in total.
AmplifyVerdict amplify_one_sided_known_q(BitOracle& algorithm, double q, double eps, Rng& rng);

}  // namespace qqw
