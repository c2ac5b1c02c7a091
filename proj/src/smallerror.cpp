#include "qqw/smallerror.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qqw/parallel.hpp"
#include "qqw/report.hpp"

namespace qqw {
namespace {

std::size_t error_exponent(std::size_t n, double eps) {
  if (!(eps > 0.0) || eps >= 1.0)
    throw std::invalid_argument("eps must lie in (0, 1)");
  if (eps < std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(n, 1022))))
    throw std::invalid_argument("eps must be >= 2^-N");
  const double l2 = -std::log2(eps);
  auto t0 = static_cast<std::size_t>(std::ceil(l2 - 1e-9));
  if (t0 < 1) t0 = 1;
  return std::min(t0, n);
}

}  // namespace

SmallErrorPlan plan_small_error_search(std::size_t n, double eps) {
  SmallErrorPlan plan;
  plan.n = n;
  plan.eps = eps;
  plan.t0 = error_exponent(n, eps);
  const double threshold =
      std::min(1.0, static_cast<double>(plan.t0 + 1) / static_cast<double>(n));
  plan.amplifier = plan_fixed_point_search(threshold, 1.0 / std::sqrt(2.0));

  std::uint64_t budget = 0;
  for (std::size_t t = 1; t <= plan.t0; ++t) budget += exact_search_query_bound(n, t);
  budget += plan.t0 * (plan.amplifier.iterations + 1);
  plan.worst_case_queries = budget;
  plan.bound_2_45 =
      2.45 * std::sqrt(static_cast<double>(n) * static_cast<double>(plan.t0));
  plan.additive_c0 = static_cast<double>(budget) - plan.bound_2_45;
  return plan;
}

SearchOutcome small_error_search(BitOracle& oracle, double eps, Rng& rng) {
  return small_error_search(oracle, plan_small_error_search(oracle.size(), eps), rng);
}

SearchOutcome small_error_search(BitOracle& oracle, const SmallErrorPlan& plan, Rng& rng) {
  SearchOutcome out;
  for (std::size_t t = 1; t <= plan.t0; ++t) {
    SearchOutcome stage = exact_search(oracle, t, rng);
    out.queries += stage.queries;
    if (stage.found) {
      out.found = stage.found;
      return out;
    }
  }
  for (std::size_t rep = 0; rep < plan.t0; ++rep) {
    SearchOutcome stage = fixed_point_search(oracle, plan.amplifier, rng);
    out.queries += stage.queries;
    if (stage.found) {
      out.found = stage.found;
      return out;
    }
  }
  return out;
}

double small_error_analytic_error(const SmallErrorPlan& plan, std::size_t t_true) {
  if (t_true == 0) return 0.0;  // one-sided: no false positives to produce
  double fail = 1.0;
  for (std::size_t t = 1; t <= plan.t0; ++t)
    fail *= 1.0 - exact_search_success_prob(plan.n, t, t_true);
  const double lambda = static_cast<double>(t_true) / static_cast<double>(plan.n);
  const double rep_fail = 1.0 - fixed_point_success_prob(plan.amplifier, lambda);
  for (std::size_t rep = 0; rep < plan.t0; ++rep) fail *= rep_fail;
  return fail;
}

double small_error_worst_error(const SmallErrorPlan& plan, std::size_t t_min) {
  double worst = 0.0;
  for (std::size_t t = std::max<std::size_t>(t_min, 1); t <= plan.n; ++t)
    worst = std::max(worst, small_error_analytic_error(plan, t));
  return worst;
}

RepeatSearchPlan plan_repeat_search(std::size_t n, std::size_t t_promise, double eps) {
  if (t_promise < 1) throw std::invalid_argument("repeat_search: t_promise must be >= 1");
  RepeatSearchPlan plan;
  plan.n = n;
  plan.t_promise = t_promise;
  plan.reps = error_exponent(n, eps);
  plan.expected_per_rep = bbht_expected_queries(n, t_promise);
  // Twice the expected cost plus slack for the final-round shrink, so a
  // single run fails with probability <= 1/2 for every t >= t_promise.
  plan.cutoff_per_rep =
      static_cast<std::uint64_t>(std::ceil(2.2 * plan.expected_per_rep)) + 2;
  return plan;
}

SearchOutcome repeat_search(BitOracle& oracle, std::size_t t_promise, double eps, Rng& rng) {
  return repeat_search(oracle, plan_repeat_search(oracle.size(), t_promise, eps), rng);
}

SearchOutcome repeat_search(BitOracle& oracle, const RepeatSearchPlan& plan, Rng& rng) {
  SearchOutcome out;
  for (std::size_t rep = 0; rep < plan.reps; ++rep) {
    SearchOutcome stage =
        unknown_t_search(oracle, rng, kBbhtScheduleFactor, plan.cutoff_per_rep);
    out.queries += stage.queries;
    if (stage.found) {
      out.found = stage.found;
      return out;
    }
  }
  return out;
}

double repeat_search_analytic_error(const RepeatSearchPlan& plan, std::size_t t_true) {
  if (t_true == 0) return 0.0;
  const double f = bbht_capped_failure(plan.n, t_true, plan.cutoff_per_rep);
  return std::pow(f, static_cast<double>(plan.reps));
}

namespace {

double repeat_worst_error(const RepeatSearchPlan& plan) {
  // The capped-failure DP is the expensive part; probe the promise range on
  // a geometric grid (failure decays quickly in t).
  double worst = 0.0;
  std::size_t t = plan.t_promise;
  std::size_t probes = 0;
  while (t <= plan.n && probes < 16) {
    worst = std::max(worst, repeat_search_analytic_error(plan, t));
    ++probes;
    const std::size_t next = std::max(t + 1, t + t / 2);
    if (next > plan.n) break;
    t = next;
  }
  worst = std::max(worst, repeat_search_analytic_error(plan, plan.n));
  return worst;
}

}  // namespace

std::vector<TradeoffRecord> tradeoff_sweep(const std::vector<TradeoffGridPoint>& grid,
                                           std::size_t trials, RngSeed seed,
                                           std::size_t jobs) {
  std::vector<TradeoffRecord> records;
  records.reserve(grid.size());
  Rng root(seed.seed);

  for (std::size_t g = 0; g < grid.size(); ++g) {
    const auto& point = grid[g];
    if (point.t > point.n) throw std::invalid_argument("tradeoff_sweep: t > N");
    const SmallErrorPlan staged = plan_small_error_search(point.n, point.eps);
    const RepeatSearchPlan repeat =
        point.t >= 1 ? plan_repeat_search(point.n, point.t, point.eps) : RepeatSearchPlan{};
    const std::uint64_t repeat_budget =
        point.t >= 1 ? repeat.reps * repeat.cutoff_per_rep
                     : staged.worst_case_queries + 1;
    const bool use_repeat = point.t >= 1 && repeat_budget < staged.worst_case_queries;

    TradeoffRecord rec;
    rec.n = point.n;
    rec.t = point.t;
    rec.q = static_cast<double>(point.t) / static_cast<double>(point.n);
    rec.eps_target = point.eps;
    rec.trials = trials;
    rec.seed = seed.seed;
    rec.method = use_repeat ? "repeat" : "staged-exact";
    rec.t_budget = use_repeat ? repeat_budget : staged.worst_case_queries;
    rec.eps_analytic = use_repeat ? repeat_worst_error(repeat)
                                  : small_error_worst_error(staged, point.t);

    std::vector<std::uint64_t> queries(trials, 0);
    std::vector<std::uint8_t> failed(trials, 0);
    Rng cell = root.child(g);
    run_trials(trials, jobs, [&](std::size_t i) {
      Rng trial = cell.child(i);
      BitOracle oracle = BitOracle::planted(point.n, point.t, trial);
      SearchOutcome out = use_repeat ? repeat_search(oracle, repeat, trial)
                                     : small_error_search(oracle, staged, trial);
      queries[i] = out.queries.total();
      failed[i] = (point.t >= 1 && !out.found) ? 1 : 0;
    });

    std::uint64_t total = 0, worst = 0, failures = 0;
    for (std::size_t i = 0; i < trials; ++i) {
      total += queries[i];
      worst = std::max(worst, queries[i]);
      failures += failed[i];
    }
    rec.t_mean = static_cast<double>(total) / static_cast<double>(trials);
    rec.t_max = worst;
    rec.eps_measured = static_cast<double>(failures) / static_cast<double>(trials);
    records.push_back(std::move(rec));
  }
  return records;
}

std::string tradeoff_csv(const std::vector<TradeoffRecord>& records) {
  std::string out = "N,t,q,eps_target,eps_measured,eps_analytic,T_mean,T_max,trials,seed\n";
  for (const auto& r : records) {
    out += format_u64(r.n) + "," + format_u64(r.t) + "," + format_double(r.q) + "," +
           format_double(r.eps_target) + "," + format_double(r.eps_measured) + "," +
           format_double(r.eps_analytic) + "," + format_double(r.t_mean) + "," +
           format_u64(r.t_max) + "," + format_u64(r.trials) + "," + format_u64(r.seed) + "\n";
  }
  return out;
}

std::string tradeoff_json(const std::vector<TradeoffRecord>& records) {
  JsonWriter w;
  w.begin_array();
  for (const auto& r : records) {
    w.begin_object();
    w.field("schema_version", kSchemaVersion);
    w.field("N", r.n);
    w.field("t", r.t);
    w.field("q", r.q);
    w.field("eps_target", r.eps_target);
    w.field("eps_measured", r.eps_measured);
    w.field("eps_analytic", r.eps_analytic);
    w.field("T_mean", r.t_mean);
    w.field("T_max", r.t_max);
    w.field("trials", r.trials);
    w.field("seed", r.seed);
    w.end_object();
  }
  w.end_array();
  return w.str();
}

AmplifyVerdict amplify_one_sided(BitOracle& algorithm, double eps, Rng& rng) {
  SearchOutcome out = small_error_search(algorithm, eps, rng);
  return AmplifyVerdict{out.found ? 1 : 0, out.queries};
}

AmplifyVerdict amplify_one_sided_known_q(BitOracle& algorithm, double q, double eps, Rng& rng) {
  if (!(q > 0.0) || q > 1.0)
    throw std::invalid_argument("amplify_one_sided_known_q: q must be in (0, 1]");
  const std::size_t reps = error_exponent(algorithm.size(), eps);
  const FixedPointPlan plan = plan_fixed_point_search(q, 1.0 / std::sqrt(2.0));
  AmplifyVerdict verdict;
  for (std::size_t rep = 0; rep < reps; ++rep) {
    SearchOutcome stage = fixed_point_search(algorithm, plan, rng);
    verdict.calls += stage.queries;
    if (stage.found) {
      verdict.verdict = 1;
      return verdict;
    }
  }
  return verdict;
}

}  // namespace qqw
