#include "qqw/amplitude.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qqw {
namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double clamp01(double p) { return std::min(1.0, std::max(0.0, p)); }

double theta_for(std::size_t n, std::size_t t) {
  if (n == 0) throw std::invalid_argument("N must be >= 1");
  if (t > n) throw std::invalid_argument("t > N");
  return std::asin(std::sqrt(static_cast<double>(t) / static_cast<double>(n)));
}

// Mean of sin^2((2k+1)theta) over k = 0..m-1.
double mean_success(std::uint64_t m, double theta, std::size_t t, std::size_t n) {
  if (t == 0) return 0.0;
  if (t == n) return 1.0;
  const double s2 = std::sin(2.0 * theta);
  return clamp01(0.5 - std::sin(4.0 * static_cast<double>(m) * theta) /
                           (4.0 * static_cast<double>(m) * s2));
}

// Chebyshev T_L on [0, inf).
double cheb(double order, double y) {
  if (y <= 1.0) return std::cos(order * std::acos(std::max(-1.0, y)));
  return std::cosh(order * std::acosh(y));
}

struct ExactPlan {
  std::uint64_t plain = 0;
  bool final_step = false;
  std::complex<double> alpha{1.0, 0.0};
  std::complex<double> beta{1.0, 0.0};
};

// Iteration schedule and final-step phases for a promised solution count.
// After floor(pi/(4 theta)) plain iterations the state sits within theta of
// the solution axis; the closing generalized iteration zeroes the remaining
// bad-axis amplitude. Phase solution: with c = cos(theta), s = sin(theta),
// a = (2m+1) theta, pick phi with cos(phi) = (1/2 - c^2) cos(a)/(c s sin(a))
// and u = cos(a) / (c (s e^{i phi} sin(a) + c cos(a))); then |1 - u| = 1 and
// alpha = 1 - u cancels the bad component exactly.
ExactPlan plan_exact(std::size_t n, std::size_t t_known) {
  if (t_known == 0) throw std::invalid_argument("exact_search: t_known must be >= 1");
  const double th = theta_for(n, t_known);
  ExactPlan plan;
  plan.plain = static_cast<std::uint64_t>(std::floor(kPi / (4.0 * th)));
  const double a = (2.0 * static_cast<double>(plan.plain) + 1.0) * th;
  const double cos_a = std::cos(a);
  if (std::abs(cos_a) < 1e-12) return plan;  // already on the solution axis

  plan.final_step = true;
  const double c = std::cos(th);
  const double s = std::sin(th);
  const double sin_a = std::sin(a);
  double cos_phi = (0.5 - c * c) * cos_a / (c * s * sin_a);
  cos_phi = std::min(1.0, std::max(-1.0, cos_phi));
  const double phi = std::acos(cos_phi);
  plan.beta = std::polar(1.0, phi);
  const std::complex<double> denom = c * (s * plan.beta * sin_a + c * cos_a);
  const std::complex<double> u = cos_a / denom;
  plan.alpha = std::complex<double>(1.0, 0.0) - u;
  return plan;
}

double run_exact_plan(const ExactPlan& plan, double theta_true) {
  TwoLevelState st = prepared_state(theta_true);
  plain_iteration(st, theta_true, plan.plain);
  if (plan.final_step) generalized_iteration(st, theta_true, plan.alpha, plan.beta);
  return st.success_prob();
}

// Measure the 2-D state: success draws a uniform solution, failure a uniform
// non-solution; the sampled index is then confirmed with one counted read.
SearchOutcome measure_and_verify(BitOracle& oracle, double success_prob,
                                 std::uint64_t quantum_charged, Rng& rng) {
  oracle.charge_queries(quantum_charged);
  SearchOutcome out;
  out.queries.quantum = quantum_charged;

  const auto sols = oracle.solutions(kHarness);
  const std::size_t n = oracle.size();
  const std::size_t t = sols.size();

  std::size_t sampled;
  if (t > 0 && rng.bernoulli(clamp01(success_prob))) {
    sampled = sols[rng.below(t)];
  } else if (t < n) {
    // Uniform non-solution via rank skipping (solutions are sorted).
    std::size_t r = rng.below(n - t);
    std::size_t lo = 0, hi = t;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (sols[mid] - mid <= r) lo = mid + 1; else hi = mid;
    }
    sampled = r + lo;
  } else {
    sampled = sols[rng.below(t)];  // t == n: everything is a solution
  }

  out.queries.classical_verification = 1;
  if (oracle.query(sampled) == 1) out.found = sampled;
  return out;
}

}  // namespace

double TwoLevelState::success_prob() const {
  const double g = std::norm(good);
  const double norm = g + std::norm(bad);
  return norm > 0.0 ? clamp01(g / norm) : 0.0;
}

TwoLevelState prepared_state(double theta) {
  return TwoLevelState{std::complex<double>(std::sin(theta), 0.0),
                       std::complex<double>(std::cos(theta), 0.0)};
}

void plain_iteration(TwoLevelState& s, double theta, std::uint64_t times) {
  if (times == 0) return;
  // m plain iterations compose to a single rotation by 2m*theta.
  const double a = 2.0 * static_cast<double>(times) * theta;
  const double ca = std::cos(a), sa = std::sin(a);
  const std::complex<double> g = ca * s.good + sa * s.bad;
  const std::complex<double> b = -sa * s.good + ca * s.bad;
  s.good = g;
  s.bad = b;
}

void generalized_iteration(TwoLevelState& s, double theta,
                           std::complex<double> alpha_phase,
                           std::complex<double> beta_phase) {
  const double sp = std::sin(theta);
  const double cp = std::cos(theta);
  const std::complex<double> vg = beta_phase * s.good;
  const std::complex<double> vb = s.bad;
  const std::complex<double> overlap = sp * vg + cp * vb;
  const std::complex<double> u = std::complex<double>(1.0, 0.0) - alpha_phase;
  s.good = -(vg - u * overlap * sp);
  s.bad = -(vb - u * overlap * cp);
}

RotationState rotation_state(std::size_t n, std::size_t t, std::uint64_t k) {
  RotationState r;
  r.theta = theta_for(n, t);
  r.iterations = k;
  r.success_prob = grover_success_prob(n, t, k);
  return r;
}

double grover_success_prob(std::size_t n, std::size_t t, std::uint64_t k) {
  const double th = theta_for(n, t);
  if (t == 0) return 0.0;
  const double s = std::sin((2.0 * static_cast<double>(k) + 1.0) * th);
  return clamp01(s * s);
}

SearchOutcome fixed_iteration_search(BitOracle& oracle, std::uint64_t k, Rng& rng) {
  const std::size_t t = oracle.solutions(kHarness).size();
  const double p = grover_success_prob(oracle.size(), t, k);
  return measure_and_verify(oracle, p, k, rng);
}

std::uint64_t exact_search_query_bound(std::size_t n, std::size_t t_known) {
  const double th = theta_for(n, t_known);
  return static_cast<std::uint64_t>(std::ceil(kPi / (4.0 * th))) + 2;
}

double exact_search_success_prob(std::size_t n, std::size_t t_known, std::size_t t_true) {
  const ExactPlan plan = plan_exact(n, t_known);
  return run_exact_plan(plan, theta_for(n, t_true));
}

SearchOutcome exact_search(BitOracle& oracle, std::size_t t_known, Rng& rng) {
  const ExactPlan plan = plan_exact(oracle.size(), t_known);
  const std::size_t t_true = oracle.solutions(kHarness).size();
  const double p = run_exact_plan(plan, theta_for(oracle.size(), t_true));
  const std::uint64_t quantum = plan.plain + (plan.final_step ? 1 : 0);
  return measure_and_verify(oracle, p, quantum, rng);
}

std::uint64_t default_bbht_cutoff(std::size_t n) {
  return static_cast<std::uint64_t>(std::ceil(2.0 * bbht_expected_queries(n, 1))) + 2;
}

SearchOutcome unknown_t_search(BitOracle& oracle, Rng& rng) {
  return unknown_t_search(oracle, rng, kBbhtScheduleFactor, default_bbht_cutoff(oracle.size()));
}

SearchOutcome unknown_t_search(BitOracle& oracle, Rng& rng,
                               double schedule_factor, std::uint64_t cutoff_queries) {
  if (schedule_factor <= 1.0)
    throw std::invalid_argument("unknown_t_search: schedule_factor must be > 1");
  if (cutoff_queries < 1)
    throw std::invalid_argument("unknown_t_search: cutoff_queries must be >= 1");

  const std::size_t n = oracle.size();
  const std::size_t t = oracle.solutions(kHarness).size();
  const double m_cap = std::sqrt(static_cast<double>(n));

  SearchOutcome out;
  std::uint64_t used = 0;
  double m_real = 1.0;
  while (used < cutoff_queries) {
    const std::uint64_t m = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(m_real));
    std::uint64_t k = rng.below(m);
    const std::uint64_t remaining = cutoff_queries - used;
    if (k + 1 > remaining) k = remaining - 1;  // shrink the last round to fit

    const double p = grover_success_prob(n, t, k);
    SearchOutcome round = measure_and_verify(oracle, p, k, rng);
    out.queries += round.queries;
    used += k + 1;
    if (round.found) {
      out.found = round.found;
      return out;
    }
    m_real = std::min(m_real * schedule_factor, m_cap);
  }
  return out;
}

double bbht_expected_queries(std::size_t n, std::size_t t, double schedule_factor) {
  if (t == 0) throw std::invalid_argument("bbht_expected_queries: t must be >= 1");
  const double th = theta_for(n, t);
  const double m_cap = std::sqrt(static_cast<double>(n));

  double expected = 0.0;
  double prefail = 1.0;
  double m_real = 1.0;
  for (;;) {
    const std::uint64_t m = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(m_real));
    const double round_cost = (static_cast<double>(m) - 1.0) / 2.0 + 1.0;
    const double s = mean_success(m, th, t, n);
    const bool saturated = m_real >= m_cap;
    if (saturated) {
      // All remaining rounds are identical; close the geometric tail.
      expected += s > 0.0 ? prefail * round_cost / s : 0.0;
      break;
    }
    expected += prefail * round_cost;
    prefail *= (1.0 - s);
    if (prefail < 1e-15) break;
    m_real = std::min(m_real * schedule_factor, m_cap);
  }
  return expected;
}

double bbht_capped_failure(std::size_t n, std::size_t t, std::uint64_t cutoff_queries,
                           double schedule_factor) {
  if (cutoff_queries < 1)
    throw std::invalid_argument("bbht_capped_failure: cutoff must be >= 1");
  const double th = theta_for(n, t);
  const double m_cap = std::sqrt(static_cast<double>(n));
  // Per-k success probabilities, cached for the DP inner loop.
  const auto m_limit = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(m_cap) + 1);
  std::vector<double> success(m_limit);
  for (std::uint64_t k = 0; k < m_limit; ++k) {
    if (t == 0) {
      success[k] = 0.0;
    } else {
      const double s = std::sin((2.0 * static_cast<double>(k) + 1.0) * th);
      success[k] = std::min(1.0, s * s);
    }
  }

  std::vector<double> mass(cutoff_queries, 0.0);  // by queries used, all < cutoff
  mass[0] = 1.0;
  double alive = 1.0;
  double failed = 0.0;
  double m_real = 1.0;
  while (alive > 1e-18) {
    const std::uint64_t m = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(m_real));
    std::vector<double> next(cutoff_queries, 0.0);
    double next_alive = 0.0;
    for (std::uint64_t q = 0; q < cutoff_queries; ++q) {
      const double mu = mass[q];
      if (mu <= 0.0) continue;
      const std::uint64_t remaining = cutoff_queries - q;
      const double per_k = mu / static_cast<double>(m);
      for (std::uint64_t k = 0; k < m; ++k) {
        const std::uint64_t kk = std::min(k, remaining - 1);
        const double p = success[std::min<std::uint64_t>(kk, m_limit - 1)];
        const double w = per_k * (1.0 - p);
        const std::uint64_t q2 = q + kk + 1;
        if (q2 >= cutoff_queries) {
          failed += w;
        } else {
          next[q2] += w;
          next_alive += w;
        }
      }
    }
    mass.swap(next);
    alive = next_alive;
    m_real = std::min(m_real * schedule_factor, m_cap);
  }
  failed += alive;
  return clamp01(failed);
}

FixedPointPlan plan_fixed_point_search(double threshold, double delta) {
  if (!(threshold > 0.0) || threshold > 1.0)
    throw std::invalid_argument("plan_fixed_point_search: threshold must be in (0,1]");
  if (!(delta > 0.0) || delta >= 1.0)
    throw std::invalid_argument("plan_fixed_point_search: delta must be in (0,1)");

  FixedPointPlan plan;
  plan.delta_sq = delta * delta;
  plan.threshold = threshold;

  if (threshold >= 1.0 - 1e-12) {
    plan.gamma = delta;  // L = 1: measuring the prepared state already suffices
    return plan;
  }

  const double num = std::acosh(1.0 / delta);
  const double den = std::acosh(1.0 / std::sqrt(1.0 - threshold));
  const double l0 = num / den;
  std::size_t big_l = static_cast<std::size_t>(std::ceil(l0));
  if (big_l % 2 == 0) ++big_l;
  if (big_l < 1) big_l = 1;

  plan.iterations = (big_l - 1) / 2;
  plan.gamma = 1.0 / std::cosh(num / static_cast<double>(big_l));
  const double root = std::sqrt(1.0 - plan.gamma * plan.gamma);

  plan.alpha.resize(plan.iterations);
  plan.beta.resize(plan.iterations);
  std::vector<double> ang(plan.iterations);
  for (std::size_t j = 1; j <= plan.iterations; ++j) {
    const double tangent = std::tan(2.0 * kPi * static_cast<double>(j) /
                                    static_cast<double>(big_l));
    ang[j - 1] = 2.0 * std::atan2(1.0, tangent * root);
  }
  for (std::size_t j = 0; j < plan.iterations; ++j) {
    plan.alpha[j] = std::polar(1.0, ang[j]);
    plan.beta[j] = std::polar(1.0, ang[plan.iterations - 1 - j]);
  }
  return plan;
}

double fixed_point_success_prob(const FixedPointPlan& plan, double lambda) {
  lambda = clamp01(lambda);
  const double big_l = 2.0 * static_cast<double>(plan.iterations) + 1.0;
  const double y = std::sqrt(1.0 - lambda) / plan.gamma;
  const double t = cheb(big_l, y);
  return clamp01(1.0 - plan.delta_sq * t * t);
}

double fixed_point_success_prob_sim(const FixedPointPlan& plan, double lambda) {
  const double th = std::asin(std::sqrt(clamp01(lambda)));
  TwoLevelState st = prepared_state(th);
  for (std::size_t j = 0; j < plan.iterations; ++j)
    generalized_iteration(st, th, plan.alpha[j], plan.beta[j]);
  return st.success_prob();
}

SearchOutcome fixed_point_search(BitOracle& oracle, const FixedPointPlan& plan, Rng& rng) {
  const std::size_t t = oracle.solutions(kHarness).size();
  const double lambda = static_cast<double>(t) / static_cast<double>(oracle.size());
  const double p = fixed_point_success_prob_sim(plan, lambda);
  return measure_and_verify(oracle, p, plan.iterations, rng);
}

}  // namespace qqw
