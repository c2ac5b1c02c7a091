#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "qqw/oracle.hpp"
#include "qqw/rng.hpp"

namespace qqw {

// Closed-form 2-D simulation of Grover-type search on symmetric inputs.
// The state lives in the (solution, non-solution) plane; an ordinary
// iteration rotates by 2*theta with sin^2(theta) = t/N, and a generalized
// iteration applies configurable phases to both reflections. Each iteration
// of either kind is charged exactly one oracle query.

struct RotationState {
  double theta = 0.0;
  std::uint64_t iterations = 0;
  double success_prob = 0.0;
};

RotationState rotation_state(std::size_t n, std::size_t t, std::uint64_t k);

// sin^2((2k+1) * asin(sqrt(t/N))); 0 when t == 0. Clamped to [0,1].
double grover_success_prob(std::size_t n, std::size_t t, std::uint64_t k);

struct SearchOutcome {
  // Set only after a classical verification query confirmed x_j = 1.
  std::optional<std::size_t> found;
  QueryStats queries;
};

// k plain Grover iterations, then measure and verify the sampled index.
// Charges k quantum queries plus 1 verification query.
SearchOutcome fixed_iteration_search(BitOracle& oracle, std::uint64_t k, Rng& rng);

// Search that succeeds with certainty when the exact solution count is
// known: floor(pi/(4 theta)) plain iterations followed, when needed, by one
// phase-adjusted iteration that lands the state exactly on the solution
// axis. If the promise is violated the outcome may be NotFound, never an
// unverified Found.
SearchOutcome exact_search(BitOracle& oracle, std::size_t t_known, Rng& rng);

// Worst-case total queries charged by exact_search (iterations + 1 verify).
std::uint64_t exact_search_query_bound(std::size_t n, std::size_t t_known);

// Closed-form success probability of the exact_search schedule planned for
// t_known when the input actually has t_true solutions.
double exact_search_success_prob(std::size_t n, std::size_t t_known, std::size_t t_true);

inline constexpr double kBbhtScheduleFactor = 6.0 / 5.0;

// Query cutoff giving failure probability <= 1/2 for any t >= 1 (twice the
// worst-case expected cost, Markov).
std::uint64_t default_bbht_cutoff(std::size_t n);

// Search with unknown solution count: exponentially growing iteration
// schedule with restarts. Expected O(sqrt(N/t)) queries when t >= 1;
// NotFound after at most cutoff_queries when t = 0.
SearchOutcome unknown_t_search(BitOracle& oracle, Rng& rng,
                               double schedule_factor, std::uint64_t cutoff_queries);
SearchOutcome unknown_t_search(BitOracle& oracle, Rng& rng);

// Expected total queries of the (uncapped) schedule, exactly evaluated.
double bbht_expected_queries(std::size_t n, std::size_t t,
                             double schedule_factor = kBbhtScheduleFactor);

// Exact failure probability of unknown_t_search under a query cutoff,
// evaluated by dynamic programming over the schedule.
double bbht_capped_failure(std::size_t n, std::size_t t, std::uint64_t cutoff_queries,
                           double schedule_factor = kBbhtScheduleFactor);

// Fixed-point search: a phase-scheduled iteration sequence, oblivious to the
// solution count, whose failure probability is <= delta^2 for every input
// whose solution fraction is at least `threshold`. Used as the amplification
// step of the small-error search; success probability has a Chebyshev
// closed form that the sampler must match.
struct FixedPointPlan {
  std::size_t iterations = 0;            // number of generalized iterations l
  double delta_sq = 0.0;                 // guaranteed failure bound
  double threshold = 0.0;                // covered solution fraction w
  double gamma = 0.0;                    // 1 / T_{1/L}(1/delta), L = 2l+1
  std::vector<std::complex<double>> alpha;  // e^{i alpha_j}, j = 1..l
  std::vector<std::complex<double>> beta;   // e^{i beta_j}
};

FixedPointPlan plan_fixed_point_search(double threshold, double delta);

// Closed-form success probability at solution fraction lambda = t/N.
double fixed_point_success_prob(const FixedPointPlan& plan, double lambda);

// Run the plan against an oracle; charges plan.iterations quantum queries
// plus 1 verification query.
SearchOutcome fixed_point_search(BitOracle& oracle, const FixedPointPlan& plan, Rng& rng);

// Internal 2-D engine, exposed for cross-validation against the statevector
// simulator and for closed-form error evaluation.
struct TwoLevelState {
  std::complex<double> good{0.0, 0.0};
  std::complex<double> bad{1.0, 0.0};

  double success_prob() const;
};

TwoLevelState prepared_state(double theta);
void plain_iteration(TwoLevelState& s, double theta, std::uint64_t times = 1);
// One generalized iteration: phase `beta` on the solution axis, then the
// reflection-like operator I - (1 - alpha)|psi0><psi0| about the prepared
// state for the true angle.
void generalized_iteration(TwoLevelState& s, double theta,
                           std::complex<double> alpha_phase,
                           std::complex<double> beta_phase);

// Success probability of the fixed-point plan evaluated by running the 2-D
// engine (should agree with the closed form to ~1e-12).
double fixed_point_success_prob_sim(const FixedPointPlan& plan, double lambda);

}  // namespace qqw
