#include "qqw/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qqw/amplitude.hpp"
#include "qqw/andor.hpp"
#include "qqw/bforacle.hpp"
#include "qqw/comm.hpp"
#include "qqw/graphprops.hpp"
#include "qqw/parallel.hpp"
#include "qqw/polybounds.hpp"
#include "qqw/report.hpp"
#include "qqw/smallerror.hpp"

namespace qqw {
namespace {

constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kCheckFailed = 3;

std::uint64_t seed_or_env(std::uint64_t seed, bool seed_given) {
  if (seed_given) return seed;
  if (const char* env = std::getenv("QQW_SEED")) return std::strtoull(env, nullptr, 10);
  return 1;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
    return;
  }
  if (!write_text_file(out_path, content))
    throw CLI::ValidationError("--out", "cannot write " + out_path);
}

TreeInputClass parse_tree_class(const std::string& name) {
  if (name == "planted-one") return TreeInputClass::PlantedOne;
  if (name == "planted-zero") return TreeInputClass::PlantedZero;
  if (name == "all-zero") return TreeInputClass::AllZero;
  if (name == "all-one") return TreeInputClass::AllOne;
  if (name == "random") return TreeInputClass::Random;
  throw CLI::ValidationError("--class", "unknown input class " + name);
}

struct CsvOrJson {
  std::string header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> columns;

  std::string csv() const {
    std::string out = header + "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ",";
        out += row[i];
      }
      out += "\n";
    }
    return out;
  }

  static bool numeric(const std::string& s) {
    if (s.empty()) return false;
    char* end = nullptr;
    std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
  }

  std::string json() const {
    JsonWriter w;
    w.begin_array();
    for (const auto& row : rows) {
      w.begin_object();
      w.field("schema_version", kSchemaVersion);
      for (std::size_t i = 0; i < row.size() && i < columns.size(); ++i) {
        if (numeric(row[i]))
          w.field_raw(columns[i], row[i]);
        else
          w.field(columns[i], row[i]);
      }
      w.end_object();
    }
    w.end_array();
    return w.str();
  }

  std::string render(const std::string& format) const {
    return format == "json" ? json() : csv();
  }
};

int run_search_tradeoff(const std::vector<std::size_t>& ns, const std::vector<std::size_t>& ts,
                        const std::vector<std::string>& eps_list, std::size_t trials,
                        std::uint64_t seed, std::size_t jobs, const std::string& out,
                        const std::string& format, bool check) {
  std::vector<TradeoffGridPoint> grid;
  for (std::size_t n : ns)
    for (std::size_t t : ts)
      for (const auto& eps_text : eps_list) grid.push_back({n, t, parse_eps(eps_text)});
  auto records = tradeoff_sweep(grid, trials, RngSeed{seed}, jobs);
  emit(out, format == "json" ? tradeoff_json(records) : tradeoff_csv(records));
  std::size_t bad = 0;
  for (const auto& r : records) {
    const double sigma = std::sqrt(r.eps_target * (1.0 - r.eps_target) /
                                   static_cast<double>(r.trials));
    if (r.eps_analytic > r.eps_target + 1e-12) ++bad;
    if (r.eps_measured > r.eps_target + 3.0 * sigma + 1e-12) ++bad;
  }
  std::cerr << "search-tradeoff: " << records.size() << " grid points, " << bad
            << " above target\n";
  if (check && bad > 0) return kCheckFailed;
  return kOk;
}

int run_exact_search(std::size_t n_max, std::size_t trials, std::uint64_t seed,
                     const std::string& out, const std::string& format, bool check) {
  CsvOrJson table;
  table.header = "N,t,trials,failures,analytic_success,queries_max,queries_bound";
  table.columns = {"N", "t", "trials", "failures", "analytic_success", "queries_max",
                   "queries_bound"};
  Rng root(seed);
  std::uint64_t failures_total = 0;
  double worst_analytic = 1.0;
  for (std::size_t n = 2; n <= n_max; ++n) {
    for (std::size_t t = 1; t <= n; ++t) {
      Rng cell = root.child(n * 131071 + t);
      const double analytic = exact_search_success_prob(n, t, t);
      worst_analytic = std::min(worst_analytic, analytic);
      std::uint64_t failures = 0, worst_queries = 0;
      for (std::size_t i = 0; i < trials; ++i) {
        Rng trial = cell.child(i);
        BitOracle oracle = BitOracle::planted(n, t, trial);
        SearchOutcome outcome = exact_search(oracle, t, trial);
        if (!outcome.found) ++failures;
        worst_queries = std::max(worst_queries, outcome.queries.total());
      }
      failures_total += failures;
      table.rows.push_back({format_u64(n), format_u64(t), format_u64(trials),
                            format_u64(failures), format_double(analytic),
                            format_u64(worst_queries),
                            format_u64(exact_search_query_bound(n, t))});
    }
  }
  emit(out, table.render(format));
  std::cerr << "exact-search: sweep to N=" << n_max << ", failures=" << failures_total
            << ", min analytic success=" << format_double(worst_analytic) << "\n";
  if (check && (failures_total > 0 || worst_analytic < 1.0 - 1e-9)) return kCheckFailed;
  return kOk;
}

int run_andor(const std::string& shape_kind, std::size_t n, std::size_t depth,
              const std::string& root, const std::string& input_class, std::size_t trials,
              double cutoff_multiplier, std::uint64_t seed, std::size_t jobs,
              const std::string& out, const std::string& format, bool check) {
  TreeShape shape;
  if (shape_kind == "and-of-ors") {
    shape = make_and_of_ors(n);
  } else {
    shape = uniform_shape(n, depth, root == "and" ? GateKind::And : GateKind::Or);
  }
  const TreeInputClass klass = parse_tree_class(input_class);

  Rng rng(seed);
  const double expected = calibrate_zero_error(
      shape, [&](Rng& r) { return sample_tree_input(shape, klass, r); }, rng);

  CsvOrJson table;
  table.header = "shape_id,N,d,input_class,verdict,queries_quantum,queries_classical,dontknow,seed";
  table.columns = {"shape_id", "N", "d", "input_class", "verdict", "queries_quantum",
                   "queries_classical", "dontknow", "seed"};
  ZeroErrorOptions opts;
  opts.cutoff_multiplier = cutoff_multiplier;
  opts.calibrated_expected = expected;

  struct Row {
    bool dont_know = false;
    bool wrong = false;
    int value = 0;
    QueryStats queries;
  };
  std::vector<Row> results(trials);
  run_trials(trials, jobs, [&](std::size_t i) {
    Rng trial = rng.child(i);
    BitOracle oracle = sample_tree_input(shape, klass, trial);
    const int truth = eval_tree(shape, oracle.bits(kHarness));
    ZeroErrorVerdict v = zero_error_evaluate(shape, oracle, trial, opts);
    results[i] = {v.dont_know, !v.dont_know && v.value != truth, v.value, v.queries};
  });
  std::size_t dontknow = 0, wrong = 0;
  for (const Row& r : results) {
    dontknow += r.dont_know ? 1 : 0;
    wrong += r.wrong ? 1 : 0;
    table.rows.push_back({shape.id(), format_u64(shape.leaves()), format_u64(shape.depth()),
                          tree_input_class_name(klass),
                          r.dont_know ? "-1" : format_u64(static_cast<std::uint64_t>(r.value)),
                          format_u64(r.queries.quantum),
                          format_u64(r.queries.classical_verification),
                          r.dont_know ? "1" : "0", format_u64(seed)});
  }
  emit(out, table.render(format));
  const double dk_rate = static_cast<double>(dontknow) / static_cast<double>(trials);
  std::cerr << "andor: shape=" << shape.id() << " trials=" << trials << " dontknow-rate="
            << format_double(dk_rate) << " wrong=" << wrong << "\n";
  const double sigma = std::sqrt(0.25 / static_cast<double>(trials));
  if (check && (wrong > 0 || dk_rate > 0.5 + 3.0 * sigma)) return kCheckFailed;
  return kOk;
}

int run_star(std::size_t n, const std::string& klass, std::size_t trials, std::uint64_t seed,
             std::size_t jobs, const std::string& out, const std::string& format, bool check) {
  Rng rng(seed);
  auto sample = [&](Rng& r) {
    if (klass == "complete") return GraphOracle::complete(n);
    if (klass == "empty") return GraphOracle::empty(n);
    if (klass == "star") return GraphOracle::random_with_star(n, 0.5, r);
    if (klass == "starless") return GraphOracle::random_starless(n, 0.5, r);
    return GraphOracle::random(n, 0.5, r);
  };
  const TreeShape shape = star_shape(n);
  const double expected = calibrate_zero_error(
      shape, [&](Rng& r) { return sample(r).oracle(); }, rng);
  ZeroErrorOptions opts;
  opts.calibrated_expected = expected;

  CsvOrJson table;
  table.header = "n,N,property,verdict,queries_quantum,queries_classical,seed";
  table.columns = {"n", "N", "property", "verdict", "queries_quantum", "queries_classical",
                   "seed"};
  struct Row {
    bool dont_know = false;
    bool wrong = false;
    int value = 0;
    QueryStats queries;
  };
  std::vector<Row> results(trials);
  run_trials(trials, jobs, [&](std::size_t i) {
    Rng trial = rng.child(i);
    GraphOracle graph = sample(trial);
    std::vector<std::uint8_t> bits(graph.oracle().bits(kHarness).begin(),
                                   graph.oracle().bits(kHarness).end());
    const int truth = eval_tree(shape, bits);
    StarVerdict v = star_zero_error(graph, trial, opts);
    results[i] = {v.dont_know, !v.dont_know && v.value != truth, v.value, v.queries};
  });
  std::size_t dontknow = 0, wrong = 0;
  for (const Row& r : results) {
    dontknow += r.dont_know ? 1 : 0;
    wrong += r.wrong ? 1 : 0;
    table.rows.push_back({format_u64(n), format_u64(n * (n - 1)), "star",
                          r.dont_know ? "-1" : format_u64(static_cast<std::uint64_t>(r.value)),
                          format_u64(r.queries.quantum),
                          format_u64(r.queries.classical_verification), format_u64(seed)});
  }
  emit(out, table.render(format));
  const double dk_rate = static_cast<double>(dontknow) / static_cast<double>(trials);
  std::cerr << "star: n=" << n << " trials=" << trials << " dontknow-rate="
            << format_double(dk_rate) << " wrong=" << wrong << "\n";
  const double sigma = std::sqrt(0.25 / static_cast<double>(trials));
  if (check && (wrong > 0 || dk_rate > 0.5 + 3.0 * sigma)) return kCheckFailed;
  return kOk;
}

int run_majority(std::size_t n, bool exhaustive, std::size_t trials, std::uint64_t seed,
                 const std::string& out, const std::string& format, bool check) {
  CsvOrJson table;
  table.header = "N,input,value,tie,comparisons,queries";
  table.columns = {"N", "input", "value", "tie", "comparisons", "queries"};
  const std::uint64_t bound = n - ones_in_binary(n) + 1;
  std::uint64_t worst = 0;
  std::size_t wrong = 0;
  auto run_one = [&](std::uint64_t mask) {
    std::vector<std::uint8_t> bits(n);
    std::size_t weight = 0;
    for (std::size_t i = 0; i < n; ++i) {
      bits[i] = (mask >> i) & 1;
      weight += bits[i];
    }
    BitOracle oracle{std::move(bits)};
    MajorityResult m = majority_exact(oracle);
    const int expected_value = 2 * weight >= n ? 1 : 0;
    if (m.value != expected_value) ++wrong;
    worst = std::max(worst, m.queries);
    table.rows.push_back({format_u64(n), format_u64(mask),
                          format_u64(static_cast<std::uint64_t>(m.value)), m.tie ? "1" : "0",
                          format_u64(m.comparisons), format_u64(m.queries)});
  };
  if (exhaustive) {
    if (n > 22) throw CLI::ValidationError("--N", "exhaustive mode caps N at 22");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) run_one(mask);
  } else {
    Rng rng(seed);
    for (std::size_t i = 0; i < trials; ++i) run_one(rng.next() & ((std::uint64_t{1} << n) - 1));
  }
  emit(out, table.render(format));
  std::cerr << "majority: N=" << n << " worst-queries=" << worst << " bound=" << bound
            << " wrong=" << wrong << "\n";
  if (check && (wrong > 0 || worst > bound)) return kCheckFailed;
  return kOk;
}

int run_comm(std::size_t n, const std::string& mode, const std::string& klass,
             std::size_t trials, std::uint64_t seed, const std::string& out,
             const std::string& format, const std::string& transcript_path, bool check) {
  Rng rng(seed);
  CsvOrJson table;
  table.header = "N,k,instance_class,output,qubits_sent,queries,seed";
  table.columns = {"N", "k", "instance_class", "output", "qubits_sent", "queries", "seed"};
  std::size_t bad = 0;
  std::string transcript;

  if (mode == "cert") {
    const TreeShape shape = make_and_of_ors(n);
    for (std::size_t i = 0; i < trials; ++i) {
      Rng trial = rng.child(i);
      CertRelationInstance inst;
      inst.shape = shape;
      inst.x.resize(n);
      inst.y.resize(n);
      // Random satisfiable instance: a common 1 planted in every subtree.
      BitOracle planted = sample_tree_input(shape, TreeInputClass::PlantedOne, trial);
      for (std::size_t j = 0; j < n; ++j) {
        inst.x[j] = planted.bits(kHarness)[j] | static_cast<std::uint8_t>(trial.below(2));
        inst.y[j] = planted.bits(kHarness)[j] |
                    (inst.x[j] & static_cast<std::uint8_t>(trial.below(2)));
      }
      DistributedCertResult r = distributed_certificate(inst, trial);
      const std::uint64_t width = query_qubit_width(n);
      if (!verify_relation(inst.x, inst.y, r.certificate, shape)) ++bad;
      if (r.channel.qubits_sent != 2 * r.queries.total() * width) ++bad;
      if (i == 0) transcript = r.channel.transcript_lines();
      table.rows.push_back({format_u64(n), format_u64(n), "cert",
                            format_u64(static_cast<std::uint64_t>(r.value)),
                            format_u64(r.channel.qubits_sent), format_u64(r.queries.total()),
                            format_u64(seed)});
    }
  } else {
    const std::size_t k = disjointness_k_for(n);
    std::size_t positives = 0;
    for (std::size_t i = 0; i < trials; ++i) {
      Rng trial = rng.child(i);
      std::vector<std::uint8_t> x(k, 0), y(k, 0);
      if (klass == "intersecting") {
        for (auto& b : x) b = trial.below(4) == 0 ? 1 : 0;
        const std::size_t hit = static_cast<std::size_t>(trial.below(k));
        x[hit] = 1;
        y[hit] = 1;
      } else {
        // Disjoint: y picks only positions where x is 0.
        for (std::size_t j = 0; j < k; ++j) {
          x[j] = trial.below(4) == 0 ? 1 : 0;
          y[j] = x[j] ? 0 : (trial.below(4) == 0 ? 1 : 0);
        }
      }
      DisjointnessResult r = disjointness_via_certificates(x, y, n, trial);
      positives += r.output;
      if (klass != "intersecting" && r.output != 0) ++bad;
      table.rows.push_back({format_u64(n), format_u64(k), klass,
                            format_u64(static_cast<std::uint64_t>(r.output)),
                            format_u64(r.qubits_sent), format_u64(r.queries.total()),
                            format_u64(seed)});
    }
    const double rate = static_cast<double>(positives) / static_cast<double>(trials);
    std::cerr << "comm disjointness: class=" << klass << " detect-rate=" << format_double(rate)
              << "\n";
    if (check && klass == "intersecting") {
      const double sigma = std::sqrt(0.25 / static_cast<double>(trials));
      if (rate < 0.5 - 3.0 * sigma) ++bad;
    }
  }
  emit(out, table.render(format));
  if (!transcript_path.empty()) {
    if (!write_text_file(transcript_path, transcript))
      throw CLI::ValidationError("--transcript", "cannot write " + transcript_path);
  }
  std::cerr << "comm: mode=" << mode << " trials=" << trials << " violations=" << bad << "\n";
  if (check && bad > 0) return kCheckFailed;
  return kOk;
}

int run_polybounds(bool paturi_grid, bool extremal, std::size_t samples, std::size_t curve_n,
                   std::size_t curve_t, double a, double b, std::uint64_t seed,
                   const std::string& out, const std::string& format, bool check) {
  bool all_hold = true;
  CsvOrJson table;
  if (paturi_grid) {
    for (int d = 1; d <= 200; ++d)
      for (int i = 0; i <= 300; ++i)
        if (!paturi_check(d, 0.01 * i).holds) all_hold = false;
    std::cerr << "polybounds: growth grid " << (all_hold ? "holds" : "FAILS") << "\n";
  }
  if (extremal) {
    Rng rng(seed);
    const std::vector<double> xs = {1.1, 1.5, 2.0, 3.0};
    for (std::size_t s = 0; s < samples; ++s) {
      std::vector<double> values(9);
      for (auto& v : values) v = 2.0 * rng.uniform() - 1.0;
      UnivariatePoly q = UnivariatePoly::from_extremal_values(values);
      const double m = q.max_abs_on_grid(-1.0, 1.0);
      if (m > 1.0) q = q.scaled(1.0 / (m * (1.0 + 1e-12)));
      if (!extremal_check(q, xs)) all_hold = false;
    }
    std::cerr << "polybounds: " << samples << " bounded interpolants "
              << (all_hold ? "hold" : "FAIL") << "\n";
  }
  if (curve_n > 0) {
    table.header = "N,t,T_or_d,bound_value,a,b";
    table.columns = {"N", "t", "T_or_d", "bound_value", "a", "b"};
    BoundParams params{a, b};
    for (std::size_t big_t = 0; big_t <= curve_n - curve_t; ++big_t) {
      auto bound = search_error_lower_bound(curve_n, curve_t, static_cast<double>(big_t), params);
      if (!bound) break;
      table.rows.push_back({format_u64(curve_n), format_u64(curve_t), format_u64(big_t),
                            format_double(*bound), format_double(a),
                            format_double(params.effective_b())});
    }
    emit(out, table.render(format));
  }
  if (check && !all_hold) return kCheckFailed;
  return kOk;
}

int run_oracle(const std::string& file, const std::string& func, std::size_t n,
               const std::string& out, const std::string& format) {
  bf::TruthTable t;
  if (!file.empty()) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw CLI::ValidationError("--file", "cannot read " + file);
    std::stringstream buf;
    buf << in.rdbuf();
    t = bf::from_file(buf.str());
  } else if (func == "or") {
    t = bf::or_function(n);
  } else if (func == "and") {
    t = bf::and_function(n);
  } else if (func == "majority") {
    t = bf::majority_function(n);
  } else if (func == "star") {
    t = bf::star_property(n);
  } else if (func == "edge") {
    t = bf::edge_exists_property(n);
  } else {
    throw CLI::ValidationError("--func", "unknown function " + func);
  }

  CsvOrJson table;
  table.header = "N,degree,sensitivity,depth,monotone,depth_le_sens_sq,deg_ge_sens";
  table.columns = {"N", "degree", "sensitivity", "depth", "monotone", "depth_le_sens_sq",
                   "deg_ge_sens"};
  if (t.n <= 14) {
    bf::MonotoneReport r = bf::check_monotone_relations(t);
    table.rows.push_back({format_u64(t.n), format_u64(r.deg), format_u64(r.sens),
                          format_u64(r.depth), r.monotone ? "1" : "0",
                          r.depth_le_sens_sq ? "1" : "0", r.deg_ge_sens ? "1" : "0"});
  } else {
    table.rows.push_back({format_u64(t.n), format_u64(bf::degree(t)),
                          format_u64(bf::sensitivity(t)), "-1", bf::is_monotone(t) ? "1" : "0",
                          "-1", "-1"});
  }
  emit(out, table.render(format));
  return kOk;
}

}  // namespace

int cli_run(const std::vector<std::string>& args) {
  CLI::App app{"quantum query workbench"};
  app.require_subcommand(1);

  std::string out = "-";
  std::string format = "csv";
  std::uint64_t seed = 1;
  std::size_t trials = 1000;
  std::size_t jobs = 1;
  bool check = false;
  app.add_option("--out", out, "output path ('-' = stdout)")->capture_default_str();
  app.add_option("--format", format)->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  auto* seed_opt = app.add_option("--seed", seed, "rng seed (env QQW_SEED as fallback)");
  app.add_option("--trials", trials)->capture_default_str();
  app.add_option("--jobs", jobs)->capture_default_str();
  app.add_flag("--check", check, "evaluate built-in thresholds; exit 3 on failure");

  auto* c_tradeoff = app.add_subcommand("search-tradeoff", "epsilon/query trade-off sweep");
  std::vector<std::size_t> ns{4096};
  std::vector<std::size_t> ts{1};
  std::vector<std::string> eps_list{"2^-6"};
  c_tradeoff->add_option("--N", ns)->capture_default_str();
  c_tradeoff->add_option("--t", ts)->capture_default_str();
  c_tradeoff->add_option("--eps", eps_list, "accepts 2^-k literals")->capture_default_str();

  auto* c_exact = app.add_subcommand("exact-search", "exhaustive exact-search sweep");
  std::size_t exact_n_max = 64;
  c_exact->add_option("--N-max", exact_n_max)->capture_default_str();

  auto* c_andor = app.add_subcommand("andor", "zero-error tree evaluation");
  std::string shape_kind = "and-of-ors";
  std::size_t andor_n = 512;
  std::size_t andor_depth = 2;
  std::string andor_root = "or";
  std::string andor_class = "planted-one";
  double cutoff_multiplier = 2.0;
  c_andor->add_option("--shape", shape_kind)->check(CLI::IsMember({"and-of-ors", "uniform"}))
      ->capture_default_str();
  c_andor->add_option("--N", andor_n)->capture_default_str();
  c_andor->add_option("--depth", andor_depth)->capture_default_str();
  c_andor->add_option("--root", andor_root)->check(CLI::IsMember({"and", "or"}))
      ->capture_default_str();
  c_andor->add_option("--class", andor_class)->capture_default_str();
  c_andor->add_option("--cutoff-multiplier", cutoff_multiplier)->capture_default_str();

  auto* c_star = app.add_subcommand("star", "zero-error star detection");
  std::size_t star_n = 32;
  std::string star_class = "star";
  c_star->add_option("--n", star_n)->capture_default_str();
  c_star->add_option("--class", star_class)
      ->check(CLI::IsMember({"star", "starless", "complete", "empty", "random"}))
      ->capture_default_str();

  auto* c_majority = app.add_subcommand("majority", "exact majority");
  std::size_t majority_n = 12;
  bool exhaustive = false;
  c_majority->add_option("--N", majority_n)->capture_default_str();
  c_majority->add_flag("--exhaustive", exhaustive);

  auto* c_comm = app.add_subcommand("comm", "two-party certificate protocol");
  std::size_t comm_n = 512;
  std::string comm_mode = "cert";
  std::string comm_class = "intersecting";
  std::string transcript_path;
  c_comm->add_option("--N", comm_n)->capture_default_str();
  c_comm->add_option("--mode", comm_mode)->check(CLI::IsMember({"cert", "disjointness"}))
      ->capture_default_str();
  c_comm->add_option("--class", comm_class)
      ->check(CLI::IsMember({"disjoint", "intersecting"}))->capture_default_str();
  c_comm->add_option("--transcript", transcript_path, "write first run's transcript");

  auto* c_poly = app.add_subcommand("polybounds", "bound evaluation and checks");
  bool paturi_grid = false;
  bool extremal = false;
  std::size_t samples = 1000;
  std::size_t curve_n = 0;
  std::size_t curve_t = 1;
  double param_a = 1.0;
  double param_b = 0.0;
  c_poly->add_flag("--paturi-grid", paturi_grid, "growth inequality on the full grid");
  c_poly->add_flag("--extremal", extremal, "random bounded interpolants");
  c_poly->add_option("--samples", samples)->capture_default_str();
  c_poly->add_option("--curve-N", curve_n, "emit a bound curve for this N");
  c_poly->add_option("--curve-t", curve_t)->capture_default_str();
  c_poly->add_option("--a", param_a)->capture_default_str();
  c_poly->add_option("--b", param_b, "0 selects the derived floor")->capture_default_str();

  auto* c_oracle = app.add_subcommand("oracle", "brute-force function analysis");
  std::string oracle_file;
  std::string oracle_func = "or";
  std::size_t oracle_n = 4;
  c_oracle->add_option("--file", oracle_file, "truth table file");
  c_oracle->add_option("--func", oracle_func)->capture_default_str();
  c_oracle->add_option("--n", oracle_n, "arity (or vertex count for graph properties)")
      ->capture_default_str();

  for (CLI::App* sc : app.get_subcommands([](const CLI::App*) { return true; }))
    sc->fallthrough();

  std::vector<std::string> argv = args;
  argv.insert(argv.begin(), "qqw");
  std::vector<const char*> raw;
  raw.reserve(argv.size());
  for (const auto& a : argv) raw.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
    seed = seed_or_env(seed, seed_opt->count() > 0);
    if (c_tradeoff->parsed())
      return run_search_tradeoff(ns, ts, eps_list, trials, seed, jobs, out, format, check);
    if (c_exact->parsed())
      return run_exact_search(exact_n_max, trials, seed, out, format, check);
    if (c_andor->parsed())
      return run_andor(shape_kind, andor_n, andor_depth, andor_root, andor_class, trials,
                       cutoff_multiplier, seed, jobs, out, format, check);
    if (c_star->parsed())
      return run_star(star_n, star_class, trials, seed, jobs, out, format, check);
    if (c_majority->parsed())
      return run_majority(majority_n, exhaustive, trials, seed, out, format, check);
    if (c_comm->parsed())
      return run_comm(comm_n, comm_mode, comm_class, trials, seed, out, format,
                      transcript_path, check);
    if (c_poly->parsed())
      return run_polybounds(paturi_grid, extremal, samples, curve_n, curve_t, param_a, param_b,
                            seed, out, format, check);
    if (c_oracle->parsed()) return run_oracle(oracle_file, oracle_func, oracle_n, out, format);
    return kUsage;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace qqw
