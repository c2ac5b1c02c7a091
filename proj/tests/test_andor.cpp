#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qqw/andor.hpp"

using namespace qqw;

namespace {

TreeShape two_by_two() {
  // (x0 v x1) ^ (x2 v x3)
  TreeShape shape;
  shape.root_gate = GateKind::And;
  shape.branching = {2, 2};
  return shape;
}

}  // namespace

TEST_CASE("tree evaluation") {
  const TreeShape shape = two_by_two();
  CHECK(eval_tree(shape, std::vector<std::uint8_t>{1, 0, 1, 1}) == 1);
  CHECK(eval_tree(shape, std::vector<std::uint8_t>{1, 1, 0, 0}) == 0);
  CHECK(eval_tree(shape, std::vector<std::uint8_t>{1, 1, 1, 1}) == 1);

  TreeShape flat;
  flat.branching = {4};
  flat.root_gate = GateKind::Or;
  CHECK(eval_tree(flat, std::vector<std::uint8_t>{0, 0, 0, 0}) == 0);
  CHECK(eval_tree(flat, std::vector<std::uint8_t>{0, 0, 1, 0}) == 1);

  CHECK_THROWS_AS(eval_tree(shape, std::vector<std::uint8_t>{1, 0}), std::invalid_argument);

  // classical baseline reads every leaf
  BitOracle oracle({1, 0, 1, 1});
  CHECK(eval_tree_oracle(shape, oracle) == 1);
  CHECK(oracle.query_count() == 4);
}

TEST_CASE("gates alternate by level") {
  TreeShape d3 = uniform_shape(8, 3, GateKind::Or);
  CHECK(d3.gate_at(0) == GateKind::Or);
  CHECK(d3.gate_at(1) == GateKind::And);
  CHECK(d3.gate_at(2) == GateKind::Or);
  CHECK(d3.leaves() == 8);
  CHECK_THROWS_AS(uniform_shape(10, 3), std::invalid_argument);
}

TEST_CASE("certificate verification") {
  const TreeShape shape = two_by_two();
  {
    BitOracle oracle({1, 0, 1, 1});
    Certificate cert{{{0, 1}, {3, 1}}, 1};
    CHECK(verify_certificate(shape, oracle, cert));
    CHECK(oracle.query_count() == 2);  // exactly the certificate's indices
  }
  {
    BitOracle oracle({1, 0, 1, 1});
    Certificate empty{{}, 1};
    CHECK_FALSE(verify_certificate(shape, oracle, empty));  // nothing forced
  }
  {
    BitOracle oracle({1, 0, 1, 1});
    Certificate wrong{{{1, 1}, {3, 1}}, 1};  // x1 is really 0
    CHECK_FALSE(verify_certificate(shape, oracle, wrong));
  }
  {
    // values match but do not force the claimed value
    BitOracle oracle({1, 0, 1, 1});
    Certificate weak{{{0, 1}}, 1};
    CHECK_FALSE(verify_certificate(shape, oracle, weak));
  }
}

TEST_CASE("three-valued evaluation") {
  const TreeShape shape = two_by_two();
  std::vector<std::int8_t> partial(4, -1);
  CHECK(eval_tree_partial(shape, partial) == -1);
  partial[0] = 1;
  partial[3] = 1;
  CHECK(eval_tree_partial(shape, partial) == 1);
  partial.assign(4, -1);
  partial[0] = 0;
  partial[1] = 0;
  CHECK(eval_tree_partial(shape, partial) == 0);  // one dead OR kills the AND
}

TEST_CASE("and-of-ors shape construction") {
  TreeShape s8 = make_and_of_ors(8);
  CHECK(s8.root_gate == GateKind::And);
  CHECK(s8.branching == std::vector<std::size_t>{2, 4});
  TreeShape s512 = make_and_of_ors(512);
  CHECK(s512.branching == std::vector<std::size_t>{8, 64});
  CHECK(s512.leaves() == 512);
  CHECK_THROWS_AS(make_and_of_ors(100), std::invalid_argument);
}

TEST_CASE("multilevel search: flat case finds a witness") {
  TreeShape flat;
  flat.branching = {64};
  flat.root_gate = GateKind::Or;
  Rng rng(3);
  std::size_t hits = 0;
  for (int i = 0; i < 500; ++i) {
    Rng trial = rng.child(i);
    BitOracle oracle = BitOracle::planted(64, 1, trial);
    CandidateResult r = multilevel_grover(flat, oracle, 1, trial);
    if (oracle.bits(kHarness)[r.candidate] == 1) ++hits;
    CHECK(oracle.query_count() == r.queries.total());
  }
  CHECK(double(hits) / 500.0 >= 0.85);  // capped search at 3x the expected cost
}

TEST_CASE("multilevel search: two levels, correct-candidate rate >= 2/3") {
  // d=2, N=64, one satisfied subtree
  TreeShape shape;
  shape.root_gate = GateKind::Or;
  shape.branching = {8, 8};
  Rng rng(5);
  std::size_t correct = 0;
  const std::size_t trials = 10000;
  for (std::size_t i = 0; i < trials; ++i) {
    Rng trial = rng.child(i);
    std::vector<std::uint8_t> bits(64, 0);
    const std::size_t sat = trial.below(8);
    for (std::size_t j = 0; j < 8; ++j) bits[sat * 8 + j] = 1;  // one full AND subtree
    BitOracle oracle{std::move(bits)};
    CandidateResult r = multilevel_grover(shape, oracle, 1, trial);
    if (r.candidate == sat) ++correct;
  }
  CHECK(double(correct) / double(trials) >= 2.0 / 3.0);

  // no satisfied subtree: every candidate fails verification
  for (std::size_t i = 0; i < 200; ++i) {
    Rng trial = rng.child(100000 + i);
    BitOracle zeros(std::vector<std::uint8_t>(64, 0));
    CandidateResult r = multilevel_grover(shape, zeros, 1, trial);
    std::vector<std::uint8_t> sub(zeros.bits(kHarness).begin() + r.candidate * 8,
                                  zeros.bits(kHarness).begin() + (r.candidate + 1) * 8);
    TreeShape subshape;
    subshape.root_gate = GateKind::And;
    subshape.branching = {8};
    CHECK(eval_tree(subshape, sub) == 0);
  }
}

TEST_CASE("one-certificate finder") {
  Rng rng(7);
  {
    // flat OR with one solution: certificate is that index
    TreeShape flat;
    flat.branching = {32};
    flat.root_gate = GateKind::Or;
    BitOracle oracle = BitOracle::planted(32, 1, rng);
    CertSearchResult r = find_one_certificate(flat, oracle, rng, 10.0, 1 << 16);
    REQUIRE(r.certificate.has_value());
    CHECK(r.certificate->entries.size() == 1);
    CHECK(oracle.bits(kHarness)[r.certificate->entries[0].first] == 1);
    CHECK(r.certificate->claimed_value == 1);
  }
  {
    // d=2 OR of ANDs: certificate covers one full subtree, verified
    TreeShape shape;
    shape.root_gate = GateKind::Or;
    shape.branching = {8, 8};
    for (int i = 0; i < 100; ++i) {
      Rng trial = rng.child(i);
      BitOracle oracle = sample_tree_input(shape, TreeInputClass::PlantedOne, trial);
      CertSearchResult r = find_one_certificate(shape, oracle, trial, 10.0, 1 << 20);
      REQUIRE(r.certificate.has_value());
      CHECK(r.certificate->entries.size() == 8);
      BitOracle fresh{std::vector<std::uint8_t>(oracle.bits(kHarness).begin(),
                                                oracle.bits(kHarness).end())};
      CHECK(verify_certificate(shape, fresh, *r.certificate));
      CHECK(eval_tree(shape, oracle.bits(kHarness)) == 1);
    }
  }
  {
    // value-0 input: the finder must exhaust its budget
    TreeShape shape;
    shape.root_gate = GateKind::Or;
    shape.branching = {4, 4};
    BitOracle zeros(std::vector<std::uint8_t>(16, 0));
    CertSearchResult r = find_one_certificate(shape, zeros, rng, 10.0, 1000000);
    CHECK(r.exhausted);
    CHECK_FALSE(r.certificate.has_value());
    CHECK(r.queries.quantum == 1000000);
  }
}

TEST_CASE("zero-certificate finder") {
  Rng rng(11);
  {
    // flat OR, all zeros: only the full read refutes
    TreeShape flat;
    flat.branching = {16};
    flat.root_gate = GateKind::Or;
    BitOracle zeros(std::vector<std::uint8_t>(16, 0));
    CertSearchResult r = find_zero_certificate(flat, zeros, rng, 10.0, 1 << 16);
    REQUIRE(r.certificate.has_value());
    CHECK(r.certificate->entries.size() == 16);
    CHECK(r.certificate->claimed_value == 0);
  }
  {
    // d=2 OR of ANDs, all zeros: one refuted leaf per subtree
    TreeShape shape;
    shape.root_gate = GateKind::Or;
    shape.branching = {8, 8};
    BitOracle zeros(std::vector<std::uint8_t>(64, 0));
    CertSearchResult r = find_zero_certificate(shape, zeros, rng, 10.0, 1 << 20);
    REQUIRE(r.certificate.has_value());
    CHECK(r.certificate->entries.size() == 8);
    BitOracle fresh(std::vector<std::uint8_t>(64, 0));
    CHECK(verify_certificate(shape, fresh, *r.certificate));
  }
  {
    // value-1 input: no zero certificate, budget exhausts
    TreeShape shape;
    shape.root_gate = GateKind::Or;
    shape.branching = {4, 4};
    Rng trial = rng.child(1);
    BitOracle ones(std::vector<std::uint8_t>(16, 1));
    CertSearchResult r = find_zero_certificate(shape, ones, trial, 10.0, 500000);
    CHECK(r.exhausted);
  }
}

TEST_CASE("zero-error evaluation: soundness and the cutoff rule") {
  Rng rng(13);
  // tiny all-ones instance: never a DontKnow at a generous cutoff
  {
    TreeShape shape = two_by_two();
    ZeroErrorOptions opts;
    opts.cutoff_multiplier = 20.0;
    for (int i = 0; i < 50; ++i) {
      Rng trial = rng.child(i);
      BitOracle ones(std::vector<std::uint8_t>(4, 1));
      ZeroErrorVerdict v = zero_error_evaluate(shape, ones, trial, opts);
      REQUIRE_FALSE(v.dont_know);
      CHECK(v.value == 1);
      BitOracle fresh(std::vector<std::uint8_t>(4, 1));
      CHECK(verify_certificate(shape, fresh, v.certificate));
    }
  }
  // two-level-shape batch: every non-DontKnow verdict is correct and verified
  {
    const TreeShape shape = make_and_of_ors(512);
    for (TreeInputClass klass : {TreeInputClass::PlantedOne, TreeInputClass::PlantedZero}) {
      Rng cal_rng = rng.child(static_cast<int>(klass) + 100);
      const double expected = calibrate_zero_error(
          shape, [&](Rng& r) { return sample_tree_input(shape, klass, r); }, cal_rng);
      ZeroErrorOptions opts;
      opts.calibrated_expected = expected;
      std::size_t dontknow = 0;
      const std::size_t trials = 1500;
      for (std::size_t i = 0; i < trials; ++i) {
        Rng trial = rng.child(static_cast<int>(klass) * 100000 + i);
        BitOracle oracle = sample_tree_input(shape, klass, trial);
        const int truth = eval_tree(shape, oracle.bits(kHarness));
        ZeroErrorVerdict v = zero_error_evaluate(shape, oracle, trial, opts);
        CHECK(oracle.query_count() == v.queries.total());
        if (v.dont_know) {
          ++dontknow;
          continue;
        }
        REQUIRE(v.value == truth);
        BitOracle fresh{std::vector<std::uint8_t>(oracle.bits(kHarness).begin(),
                                                  oracle.bits(kHarness).end())};
        REQUIRE(verify_certificate(shape, fresh, v.certificate));
      }
      const double rate = double(dontknow) / double(trials);
      CHECK(rate <= 0.5 + 3.0 * std::sqrt(0.25 / double(trials)));
    }
  }
}

TEST_CASE("exhaustive four-leaf sweep: verdicts and certificates on every input") {
  const TreeShape shape = two_by_two();
  Rng rng(131);
  ZeroErrorOptions opts;
  opts.cutoff_multiplier = 30.0;
  for (std::uint64_t mask = 0; mask < 16; ++mask) {
    std::vector<std::uint8_t> bits(4);
    for (std::size_t i = 0; i < 4; ++i) bits[i] = (mask >> i) & 1;
    const int truth = eval_tree(shape, bits);
    for (int rep = 0; rep < 40; ++rep) {
      Rng trial = rng.child(mask * 1000 + rep);
      BitOracle oracle{std::vector<std::uint8_t>(bits)};
      ZeroErrorVerdict v = zero_error_evaluate(shape, oracle, trial, opts);
      if (v.dont_know) continue;
      REQUIRE(v.value == truth);
      BitOracle fresh{std::vector<std::uint8_t>(bits)};
      REQUIRE(verify_certificate(shape, fresh, v.certificate));
    }
  }
}

TEST_CASE("planted input samplers hit their target values") {
  Rng rng(17);
  for (std::size_t n : {std::size_t{64}, std::size_t{512}}) {
    const TreeShape shape = make_and_of_ors(n);
    for (int i = 0; i < 50; ++i) {
      Rng trial = rng.child(i);
      BitOracle one = sample_tree_input(shape, TreeInputClass::PlantedOne, trial);
      CHECK(eval_tree(shape, one.bits(kHarness)) == 1);
      BitOracle zero = sample_tree_input(shape, TreeInputClass::PlantedZero, trial);
      CHECK(eval_tree(shape, zero.bits(kHarness)) == 0);
    }
  }
}

TEST_CASE("randomized shapes: soundness and minimal certificates") {
  Rng rng(137);
  for (int round = 0; round < 20; ++round) {
    Rng shape_rng = rng.child(round);
    TreeShape shape;
    shape.root_gate = shape_rng.below(2) ? GateKind::And : GateKind::Or;
    const std::size_t depth = 1 + shape_rng.below(3);
    for (std::size_t l = 0; l < depth; ++l) shape.branching.push_back(2 + shape_rng.below(5));
    if (shape.leaves() > 216) continue;

    CHECK(certificate_cost_estimate(shape, 0) >= 1.0);
    CHECK(certificate_cost_estimate(shape, 1) >= 1.0);

    Rng cal = shape_rng.child(1);
    const double expected = calibrate_zero_error(
        shape, [&](Rng& r) { return sample_tree_input(shape, TreeInputClass::Random, r); },
        cal, 16);
    ZeroErrorOptions opts;
    opts.calibrated_expected = expected;

    std::size_t dontknow = 0;
    const std::size_t trials = 40;
    for (std::size_t i = 0; i < trials; ++i) {
      Rng trial = shape_rng.child(100 + i);
      BitOracle oracle = sample_tree_input(shape, TreeInputClass::Random, trial);
      const int truth = eval_tree(shape, oracle.bits(kHarness));
      ZeroErrorVerdict v = zero_error_evaluate(shape, oracle, trial, opts);
      if (v.dont_know) {
        ++dontknow;
        continue;
      }
      REQUIRE(v.value == truth);
      std::vector<std::uint8_t> bits(oracle.bits(kHarness).begin(),
                                     oracle.bits(kHarness).end());
      {
        BitOracle fresh{std::vector<std::uint8_t>(bits)};
        REQUIRE(verify_certificate(shape, fresh, v.certificate));
      }
      // certificates are minimal: dropping any entry stops forcing the value
      if (!v.certificate.entries.empty()) {
        Certificate pruned = v.certificate;
        pruned.entries.erase(pruned.entries.begin() +
                             static_cast<long>(trial.below(pruned.entries.size())));
        BitOracle fresh{std::vector<std::uint8_t>(bits)};
        CHECK_FALSE(verify_certificate(shape, fresh, pruned));
      }
      // and corrupting a recorded value makes verification fail
      {
        Certificate corrupt = v.certificate;
        auto& entry = corrupt.entries[trial.below(corrupt.entries.size())];
        entry.second ^= 1;
        BitOracle fresh{std::vector<std::uint8_t>(bits)};
        CHECK_FALSE(verify_certificate(shape, fresh, corrupt));
      }
    }
    CHECK(double(dontknow) / double(trials) <= 0.5 + 3.0 * std::sqrt(0.25 / double(trials)));
  }
}

TEST_CASE("query accounting splits quantum search from classical verification") {
  Rng rng(19);
  const TreeShape shape = make_and_of_ors(64);
  BitOracle oracle = sample_tree_input(shape, TreeInputClass::PlantedOne, rng);
  ZeroErrorOptions opts;
  opts.cutoff_multiplier = 20.0;
  ZeroErrorVerdict v = zero_error_evaluate(shape, oracle, rng, opts);
  REQUIRE_FALSE(v.dont_know);
  CHECK(v.queries.quantum > 0);
  CHECK(v.queries.classical_verification == v.certificate.entries.size());
}
