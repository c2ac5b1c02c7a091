#include "qqw/andor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qqw {
namespace {

struct BudgetExhausted {};
struct RestartSignal {
  std::size_t cap_index;
};

// Global budget plus a stack of restart allowances; every charged query is
// checked against all of them, outermost first.
class ChargeMeter {
 public:
  explicit ChargeMeter(std::uint64_t budget) : budget_(budget) {}

  void charge(std::uint64_t n) {
    if (n > budget_ - used_) {
      used_ = budget_;  // an interrupted operation spends what is left, no more
      throw BudgetExhausted{};
    }
    used_ += n;
    for (std::size_t i = 0; i < caps_.size(); ++i)
      if (used_ > caps_[i]) throw RestartSignal{i};
  }

  std::uint64_t used() const { return used_; }

  std::size_t push_cap(std::uint64_t allowance) {
    caps_.push_back(used_ + allowance);
    return caps_.size() - 1;
  }
  void pop_cap() { caps_.pop_back(); }

 private:
  std::uint64_t used_ = 0;
  std::uint64_t budget_;
  std::vector<std::uint64_t> caps_;
};

struct CapGuard {
  ChargeMeter& meter;
  ~CapGuard() { meter.pop_cap(); }
};

// Exact tail of a majority vote: probability that at least half of r
// independent error-e evaluations are wrong.
double majority_tail(std::uint64_t r, double e) {
  if (e <= 0.0) return 0.0;
  const std::uint64_t need = r / 2 + 1;
  double prob = 0.0;
  double binom = 1.0;  // C(r, j) e^j (1-e)^(r-j), built incrementally
  // start at j = 0
  double term = std::pow(1.0 - e, static_cast<double>(r));
  for (std::uint64_t j = 0; j <= r; ++j) {
    if (j >= need) prob += binom * term;
    if (j < r) {
      binom *= static_cast<double>(r - j) / static_cast<double>(j + 1);
      term *= e / (1.0 - e);
    }
  }
  return std::min(1.0, prob);
}

// Per-run profile: true node values plus the cost/error model for inner
// evaluations. Charged unit costs are deterministic per level so that query
// totals scale the way the composed algorithm's budget does.
struct TreeContext {
  const TreeShape* shape = nullptr;
  std::vector<std::vector<std::uint8_t>> values;  // values[L][i], L = 0..depth
  std::vector<std::uint64_t> unit;                // search charge at node level L
  std::vector<double> flip;                       // sampled-table flip prob at level L
  std::vector<double> bbht_iter_mean;             // expected search rounds over branching[L]
  std::vector<double> cert_cost[2];               // per (level, value)

  std::size_t depth() const { return shape->depth(); }
  int leaf(std::size_t i) const { return values[depth()][i]; }
};

constexpr double kEvalDeltaSq = 1.0 / 12.0;

TreeContext build_context(const TreeShape& shape, std::span<const std::uint8_t> bits) {
  shape.validate();
  if (bits.size() != shape.leaves())
    throw std::invalid_argument("tree input length does not match the shape");

  TreeContext ctx;
  ctx.shape = &shape;
  const std::size_t d = shape.depth();

  ctx.values.resize(d + 1);
  ctx.values[d].assign(bits.begin(), bits.end());
  for (std::size_t level = d; level-- > 0;) {
    const std::size_t n = shape.branching[level];
    const std::size_t nodes = ctx.values[level + 1].size() / n;
    ctx.values[level].resize(nodes);
    const bool is_and = shape.gate_at(level) == GateKind::And;
    for (std::size_t i = 0; i < nodes; ++i) {
      std::uint8_t v = is_and ? 1 : 0;
      for (std::size_t c = 0; c < n; ++c) {
        const std::uint8_t cv = ctx.values[level + 1][i * n + c];
        v = is_and ? (v & cv) : (v | cv);
      }
      ctx.values[level][i] = v;
    }
  }

  // Cost/error model, bottom-up. eval_cost[L] is the charge of one
  // bounded-error evaluation of a node at level L; leaves are exact.
  std::vector<double> eval_cost(d + 1, 1.0);
  std::vector<double> eval_err(d + 1, 0.0);
  ctx.unit.assign(d, 1);
  ctx.flip.assign(d, 0.0);
  ctx.bbht_iter_mean.assign(d, 1.0);
  for (std::size_t level = d; level-- > 0;) {
    const std::size_t n = shape.branching[level];
    const bool leaf_children = (level + 1 == d);
    std::uint64_t reps = 1;
    if (!leaf_children) {
      const auto lg = static_cast<std::uint64_t>(std::ceil(std::log2(static_cast<double>(n))));
      reps = 2 * lg + 1;
    }
    const double child_cost = eval_cost[level + 1];
    ctx.unit[level] =
        std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(
                                       static_cast<double>(reps) * child_cost)));
    ctx.flip[level] = leaf_children ? 0.0 : majority_tail(reps, eval_err[level + 1]);
    ctx.bbht_iter_mean[level] = bbht_expected_queries(n, 1);

    const FixedPointPlan fp = plan_fixed_point_search(
        1.0 / static_cast<double>(n), std::sqrt(kEvalDeltaSq));
    eval_cost[level] = static_cast<double>(fp.iterations + 1) * static_cast<double>(ctx.unit[level]);
    eval_err[level] = kEvalDeltaSq + static_cast<double>(n) * ctx.flip[level];
  }

  for (int b = 0; b < 2; ++b) {
    auto& kappa = ctx.cert_cost[b];
    kappa.assign(d + 1, 1.0);
    for (std::size_t level = d; level-- > 0;) {
      const std::size_t n = shape.branching[level];
      const bool searching = (shape.gate_at(level) == GateKind::Or) == (b == 1);
      const double child = kappa[level + 1];
      if (searching) {
        kappa[level] = 3.0 * ctx.bbht_iter_mean[level] * static_cast<double>(ctx.unit[level]) +
                       2.0 * child + 8.0;
      } else {
        kappa[level] = static_cast<double>(n) * (child + 1.0);
      }
    }
  }
  return ctx;
}

// Certificate finder with restart discipline. All charges flow through the
// meter; wrong-value targets never return, they exhaust whatever budget or
// allowance encloses them.
class CertRunner {
 public:
  CertRunner(const TreeContext& ctx, ChargeMeter& meter, Rng& rng, double restart_factor)
      : ctx_(ctx), meter_(meter), rng_(rng), restart_factor_(restart_factor) {}

  Certificate run(std::size_t level, std::size_t node, int b) {
    const std::size_t d = ctx_.depth();
    if (level == d) {
      for (;;) {
        meter_.charge(1);
        if (ctx_.leaf(node) == b)
          return Certificate{{{static_cast<std::uint32_t>(node), static_cast<std::uint8_t>(b)}}, b};
      }
    }
    const TreeShape& shape = *ctx_.shape;
    const std::size_t n = shape.branching[level];
    const bool searching = (shape.gate_at(level) == GateKind::Or) == (b == 1);
    if (searching) {
      const auto allowance = std::max<std::uint64_t>(
          8, static_cast<std::uint64_t>(restart_factor_ * ctx_.cert_cost[b][level + 1]));
      for (;;) {
        const std::size_t candidate = sampled_search(level, node, b);
        const std::size_t cap = meter_.push_cap(allowance);
        CapGuard guard{meter_};
        try {
          return run(level + 1, node * n + candidate, b);
        } catch (const RestartSignal& s) {
          if (s.cap_index != cap) throw;
        }
      }
    }
    Certificate all;
    all.claimed_value = b;
    for (std::size_t c = 0; c < n; ++c) {
      Certificate part = run(level + 1, node * n + c, b);
      all.entries.insert(all.entries.end(), part.entries.begin(), part.entries.end());
    }
    return all;
  }

  // Bounded-error locator for a value-b child of (level, node): inner
  // evaluations are collapsed into a sampled child-value table (per-index
  // flip probability from the majority-amplified error model), then an
  // exponential-schedule search runs against that table. Returns a candidate
  // even on miss; callers verify by recursing.
  std::size_t sampled_search(std::size_t level, std::size_t node, int b) {
    const TreeShape& shape = *ctx_.shape;
    const std::size_t n = shape.branching[level];
    const std::uint64_t unit = ctx_.unit[level];
    const double flip = ctx_.flip[level];

    std::vector<std::uint8_t> table(n);
    std::vector<std::uint32_t> marked;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint8_t v = ctx_.values[level + 1][node * n + i];
      if (flip > 0.0 && rng_.bernoulli(flip)) v ^= 1;
      table[i] = v;
      if (v == b) marked.push_back(static_cast<std::uint32_t>(i));
    }

    const auto cutoff = static_cast<std::uint64_t>(std::ceil(3.0 * ctx_.bbht_iter_mean[level])) + 1;
    const double m_cap = std::sqrt(static_cast<double>(n));
    double m_real = 1.0;
    std::uint64_t used = 0;
    std::size_t candidate = static_cast<std::size_t>(rng_.below(n));
    while (used < cutoff) {
      const auto m = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(m_real));
      const std::uint64_t k = rng_.below(m);
      const double p = grover_success_prob(n, marked.size(), k);
      meter_.charge(k * unit);
      if (!marked.empty() && rng_.bernoulli(p)) {
        candidate = marked[rng_.below(marked.size())];
      } else if (marked.size() < n) {
        std::size_t r = static_cast<std::size_t>(rng_.below(n - marked.size()));
        std::size_t lo = 0, hi = marked.size();
        while (lo < hi) {
          const std::size_t mid = (lo + hi) / 2;
          if (marked[mid] - mid <= r) lo = mid + 1; else hi = mid;
        }
        candidate = r + lo;
      } else {
        candidate = marked[rng_.below(marked.size())];
      }
      meter_.charge(unit);  // confirm against the sampled table
      used += k + 1;
      if (table[candidate] == b) return candidate;
      m_real = std::min(m_real * kBbhtScheduleFactor, m_cap);
    }
    return candidate;
  }

 private:
  const TreeContext& ctx_;
  ChargeMeter& meter_;
  Rng& rng_;
  double restart_factor_;
};

void normalize(Certificate& cert) {
  std::sort(cert.entries.begin(), cert.entries.end());
  cert.entries.erase(std::unique(cert.entries.begin(), cert.entries.end()), cert.entries.end());
}

struct SideRun {
  bool terminated = false;
  std::uint64_t used = 0;
  Certificate certificate;
};

SideRun run_side(const TreeContext& ctx, int b, std::uint64_t budget, double restart_factor,
                 Rng rng) {
  SideRun side;
  ChargeMeter meter(budget);
  CertRunner runner(ctx, meter, rng, restart_factor);
  try {
    side.certificate = runner.run(0, 0, b);
    normalize(side.certificate);
    side.terminated = true;
    side.used = meter.used();
  } catch (const BudgetExhausted&) {
    side.used = meter.used();
  }
  return side;
}

// Dovetailed (strictly alternating) composition of the two finders,
// expressed through interleaved query indices: the 1-side's q-th charge
// lands at combined index 2q-1, the 0-side's at 2q. The runs are
// independent, so pre-running each side and merging the timelines gives the
// same distribution as literal alternation.
struct DovetailOutcome {
  bool terminated = false;
  int value = 0;
  Certificate certificate;
  std::uint64_t combined = 0;  // combined queries consumed when stopping
};

DovetailOutcome dovetail(const TreeContext& ctx, std::uint64_t combined_cutoff,
                         double restart_factor, Rng& rng) {
  DovetailOutcome out;
  const std::uint64_t budget1 = (combined_cutoff + 1) / 2;
  const std::uint64_t budget0 = combined_cutoff / 2;

  const SideRun one = run_side(ctx, 1, budget1, restart_factor, rng.child(1));
  // The 0-side can only win with strictly fewer own queries than the 1-side.
  const std::uint64_t zero_budget =
      one.terminated ? std::min(budget0, one.used > 0 ? one.used - 1 : 0) : budget0;
  const SideRun zero = zero_budget > 0
                           ? run_side(ctx, 0, zero_budget, restart_factor, rng.child(2))
                           : SideRun{};

  const std::uint64_t kInf = ~std::uint64_t{0};
  const std::uint64_t idx1 = one.terminated ? 2 * one.used - 1 : kInf;
  const std::uint64_t idx0 = zero.terminated ? 2 * zero.used : kInf;
  if (idx1 == kInf && idx0 == kInf) {
    out.combined = combined_cutoff;
    return out;
  }
  out.terminated = true;
  if (idx1 <= idx0) {
    out.value = 1;
    out.certificate = one.certificate;
    out.combined = idx1;
  } else {
    out.value = 0;
    out.certificate = zero.certificate;
    out.combined = idx0;
  }
  return out;
}

std::uint64_t pilot_safety_budget(const TreeContext& ctx) {
  const double k = std::max(ctx.cert_cost[0][0], ctx.cert_cost[1][0]);
  return static_cast<std::uint64_t>(50.0 * k) + 1000;
}

double pilot_expected_combined(const TreeContext& ctx, double restart_factor, Rng& rng,
                               std::size_t pilot_runs) {
  const std::uint64_t safety = 2 * pilot_safety_budget(ctx);
  double total = 0.0;
  for (std::size_t i = 0; i < pilot_runs; ++i) {
    Rng sub = rng.child(0x9000 + i);
    DovetailOutcome o = dovetail(ctx, safety, restart_factor, sub);
    total += static_cast<double>(o.terminated ? o.combined : safety);
  }
  return total / static_cast<double>(pilot_runs);
}

}  // namespace

std::size_t TreeShape::leaves() const {
  std::size_t n = 1;
  for (std::size_t b : branching) n *= b;
  return n;
}

GateKind TreeShape::gate_at(std::size_t level) const {
  const bool root_and = root_gate == GateKind::And;
  const bool is_and = (level % 2 == 0) ? root_and : !root_and;
  return is_and ? GateKind::And : GateKind::Or;
}

std::size_t TreeShape::nodes_at(std::size_t level) const {
  std::size_t n = 1;
  for (std::size_t i = 0; i < level && i < branching.size(); ++i) n *= branching[i];
  return n;
}

std::string TreeShape::id() const {
  std::string s = root_gate == GateKind::Or ? "or" : "and";
  for (std::size_t b : branching) s += "x" + std::to_string(b);
  return s;
}

void TreeShape::validate() const {
  if (branching.empty()) throw std::invalid_argument("TreeShape: depth must be >= 1");
  for (std::size_t b : branching)
    if (b == 0) throw std::invalid_argument("TreeShape: zero branching factor");
}

TreeShape uniform_shape(std::size_t n, std::size_t depth, GateKind root_gate) {
  if (depth == 0) throw std::invalid_argument("uniform_shape: depth must be >= 1");
  const auto b = static_cast<std::size_t>(
      std::llround(std::pow(static_cast<double>(n), 1.0 / static_cast<double>(depth))));
  std::size_t total = 1;
  for (std::size_t i = 0; i < depth; ++i) total *= b;
  if (total != n)
    throw std::invalid_argument("uniform_shape: N is not a perfect depth-th power");
  TreeShape shape;
  shape.root_gate = root_gate;
  shape.branching.assign(depth, b);
  return shape;
}

TreeShape make_and_of_ors(std::size_t n) {
  const auto cube = static_cast<std::size_t>(std::llround(std::cbrt(static_cast<double>(n))));
  if (cube * cube * cube != n)
    throw std::invalid_argument("make_and_of_ors: N must be a perfect cube");
  TreeShape shape;
  shape.root_gate = GateKind::And;
  shape.branching = {cube, cube * cube};
  return shape;
}

int eval_tree(const TreeShape& shape, std::span<const std::uint8_t> assignment) {
  shape.validate();
  if (assignment.size() != shape.leaves())
    throw std::invalid_argument("eval_tree: assignment length mismatch");
  std::vector<std::uint8_t> cur(assignment.begin(), assignment.end());
  for (std::size_t level = shape.depth(); level-- > 0;) {
    const std::size_t n = shape.branching[level];
    const bool is_and = shape.gate_at(level) == GateKind::And;
    std::vector<std::uint8_t> next(cur.size() / n);
    for (std::size_t i = 0; i < next.size(); ++i) {
      std::uint8_t v = is_and ? 1 : 0;
      for (std::size_t c = 0; c < n; ++c)
        v = is_and ? (v & cur[i * n + c]) : (v | cur[i * n + c]);
      next[i] = v;
    }
    cur = std::move(next);
  }
  return cur[0];
}

int eval_tree_oracle(const TreeShape& shape, BitOracle& oracle) {
  std::vector<std::uint8_t> bits(oracle.size());
  for (std::size_t i = 0; i < oracle.size(); ++i)
    bits[i] = static_cast<std::uint8_t>(oracle.query(i));
  return eval_tree(shape, bits);
}

int eval_tree_partial(const TreeShape& shape, std::span<const std::int8_t> partial) {
  shape.validate();
  if (partial.size() != shape.leaves())
    throw std::invalid_argument("eval_tree_partial: assignment length mismatch");
  std::vector<std::int8_t> cur(partial.begin(), partial.end());
  for (std::size_t level = shape.depth(); level-- > 0;) {
    const std::size_t n = shape.branching[level];
    const bool is_and = shape.gate_at(level) == GateKind::And;
    std::vector<std::int8_t> next(cur.size() / n);
    for (std::size_t i = 0; i < next.size(); ++i) {
      const std::int8_t forcing = is_and ? 0 : 1;
      bool unknown = false;
      std::int8_t v = is_and ? 1 : 0;
      for (std::size_t c = 0; c < n; ++c) {
        const std::int8_t cv = cur[i * n + c];
        if (cv == forcing) {
          v = forcing;
          unknown = false;
          break;
        }
        if (cv < 0) unknown = true;
      }
      next[i] = unknown ? std::int8_t{-1} : v;
    }
    cur = std::move(next);
  }
  return cur[0];
}

bool verify_certificate(const TreeShape& shape, BitOracle& oracle, const Certificate& cert) {
  shape.validate();
  if (oracle.size() != shape.leaves()) return false;
  std::vector<std::int8_t> partial(shape.leaves(), -1);
  for (const auto& [idx, val] : cert.entries) {
    if (idx >= shape.leaves()) return false;
    if (oracle.query(idx) != val) return false;
    partial[idx] = static_cast<std::int8_t>(val);
  }
  return eval_tree_partial(shape, partial) == cert.claimed_value;
}

double certificate_cost_estimate(const TreeShape& shape, int value) {
  std::vector<std::uint8_t> dummy(shape.leaves(), 0);
  const TreeContext ctx = build_context(shape, dummy);
  return ctx.cert_cost[value ? 1 : 0][0];
}

CandidateResult multilevel_grover(const TreeShape& shape, BitOracle& oracle, int target_value,
                                  Rng& rng) {
  const TreeContext ctx = build_context(shape, oracle.bits(kHarness));
  ChargeMeter meter(~std::uint64_t{0} >> 1);
  CertRunner runner(ctx, meter, rng, kDefaultRestartFactor);
  CandidateResult result;
  result.candidate = runner.sampled_search(0, 0, target_value ? 1 : 0);
  result.queries.quantum = meter.used();
  oracle.charge_queries(result.queries.quantum);
  return result;
}

namespace {

CertSearchResult find_certificate(const TreeShape& shape, BitOracle& oracle, Rng& rng,
                                  double restart_factor, std::uint64_t budget, int b) {
  const TreeContext ctx = build_context(shape, oracle.bits(kHarness));
  SideRun side = run_side(ctx, b, budget, restart_factor, rng.child(1));
  CertSearchResult result;
  result.queries.quantum = side.used;
  oracle.charge_queries(side.used);
  if (!side.terminated) {
    result.exhausted = true;
    return result;
  }
  if (!verify_certificate(shape, oracle, side.certificate))
    throw std::logic_error("find_certificate produced an invalid certificate");
  result.queries.classical_verification = side.certificate.size();
  result.certificate = std::move(side.certificate);
  return result;
}

}  // namespace

CertSearchResult find_one_certificate(const TreeShape& shape, BitOracle& oracle, Rng& rng,
                                      double restart_factor, std::uint64_t budget) {
  return find_certificate(shape, oracle, rng, restart_factor, budget, 1);
}

CertSearchResult find_zero_certificate(const TreeShape& shape, BitOracle& oracle, Rng& rng,
                                       double restart_factor, std::uint64_t budget) {
  return find_certificate(shape, oracle, rng, restart_factor, budget, 0);
}

ZeroErrorVerdict zero_error_evaluate(const TreeShape& shape, BitOracle& oracle, Rng& rng,
                                     const ZeroErrorOptions& opts) {
  if (opts.cutoff_multiplier < 1.0)
    throw std::invalid_argument("zero_error_evaluate: cutoff_multiplier must be >= 1");
  const TreeContext ctx = build_context(shape, oracle.bits(kHarness));

  double expected = opts.calibrated_expected;
  if (expected <= 0.0)
    expected = pilot_expected_combined(ctx, opts.restart_factor, rng, opts.pilot_runs);

  ZeroErrorVerdict verdict;
  verdict.cutoff_combined = opts.cutoff_multiplier * expected;
  const auto cutoff =
      std::max<std::uint64_t>(2, static_cast<std::uint64_t>(verdict.cutoff_combined));

  Rng run_rng = rng.child(1);
  DovetailOutcome out = dovetail(ctx, cutoff, opts.restart_factor, run_rng);
  verdict.queries.quantum = out.combined;
  oracle.charge_queries(out.combined);
  if (out.terminated) {
    if (!verify_certificate(shape, oracle, out.certificate))
      throw std::logic_error("zero_error_evaluate produced an invalid certificate");
    verdict.queries.classical_verification = out.certificate.size();
    verdict.dont_know = false;
    verdict.value = out.value;
    verdict.certificate = std::move(out.certificate);
  }
  return verdict;
}

double calibrate_zero_error(const TreeShape& shape,
                            const std::function<BitOracle(Rng&)>& sampler, Rng& rng,
                            std::size_t pilot_runs, double restart_factor) {
  double total = 0.0;
  for (std::size_t i = 0; i < pilot_runs; ++i) {
    Rng sub = rng.child(0x5000 + i);
    BitOracle oracle = sampler(sub);
    const TreeContext ctx = build_context(shape, oracle.bits(kHarness));
    const std::uint64_t safety = 2 * pilot_safety_budget(ctx);
    Rng run = sub.child(7);
    DovetailOutcome o = dovetail(ctx, safety, restart_factor, run);
    total += static_cast<double>(o.terminated ? o.combined : safety);
  }
  return total / static_cast<double>(pilot_runs);
}

std::string tree_input_class_name(TreeInputClass c) {
  switch (c) {
    case TreeInputClass::PlantedOne: return "planted-one";
    case TreeInputClass::PlantedZero: return "planted-zero";
    case TreeInputClass::AllZero: return "all-zero";
    case TreeInputClass::AllOne: return "all-one";
    case TreeInputClass::Random: return "random";
  }
  return "unknown";
}

namespace {

void plant_value(const TreeShape& shape, std::size_t level, std::size_t node, int value,
                 std::vector<std::uint8_t>& bits, Rng& rng) {
  if (level == shape.depth()) {
    bits[node] = static_cast<std::uint8_t>(value);
    return;
  }
  const std::size_t n = shape.branching[level];
  const bool is_and = shape.gate_at(level) == GateKind::And;
  const bool fan_all = (is_and && value == 1) || (!is_and && value == 0);
  if (fan_all) {
    for (std::size_t c = 0; c < n; ++c) plant_value(shape, level + 1, node * n + c, value, bits, rng);
    return;
  }
  const std::size_t pick = static_cast<std::size_t>(rng.below(n));
  for (std::size_t c = 0; c < n; ++c)
    plant_value(shape, level + 1, node * n + c, c == pick ? value : 1 - value, bits, rng);
}

}  // namespace

BitOracle sample_tree_input(const TreeShape& shape, TreeInputClass input_class, Rng& rng) {
  shape.validate();
  std::vector<std::uint8_t> bits(shape.leaves(), 0);
  switch (input_class) {
    case TreeInputClass::AllZero:
      break;
    case TreeInputClass::AllOne:
      bits.assign(bits.size(), 1);
      break;
    case TreeInputClass::Random:
      for (auto& b : bits) b = static_cast<std::uint8_t>(rng.below(2));
      break;
    case TreeInputClass::PlantedOne:
      plant_value(shape, 0, 0, 1, bits, rng);
      break;
    case TreeInputClass::PlantedZero:
      plant_value(shape, 0, 0, 0, bits, rng);
      break;
  }
  return BitOracle(std::move(bits));
}

}  // namespace qqw
