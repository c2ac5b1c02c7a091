#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qqw/polybounds.hpp"

using namespace qqw;

namespace {

// Independent interpolation oracle: Newton divided differences through
// (0, q0), (1, q1), ..., reporting the interpolant's degree.
int interpolation_degree(const std::vector<double>& values, double tol) {
  const std::size_t m = values.size();
  std::vector<std::vector<double>> table(m);
  table[0] = values;
  for (std::size_t order = 1; order < m; ++order) {
    table[order].resize(m - order);
    for (std::size_t i = 0; i + order < m; ++i)
      table[order][i] =
          (table[order - 1][i + 1] - table[order - 1][i]) / static_cast<double>(order);
  }
  int deg = 0;
  for (std::size_t order = 1; order < m; ++order)
    for (double c : table[order])
      if (std::abs(c) > tol) deg = static_cast<int>(order);
  return deg;
}

}  // namespace

TEST_CASE("chebyshev values: anchors and cross-method agreement") {
  for (int d = 0; d <= 12; ++d) CHECK(chebyshev_eval(d, 1.0) == doctest::Approx(1.0));
  CHECK(chebyshev_eval(2, 2.0) == doctest::Approx(7.0));

  // recurrence inside [-1,1] vs the trig identity T_d(cos a) = cos(d a)
  for (int d = 0; d <= 15; ++d)
    for (double a = 0.0; a <= 3.14; a += 0.17)
      CHECK(chebyshev_eval(d, std::cos(a)) == doctest::Approx(std::cos(d * a)).epsilon(1e-9));

  // closed form vs the coefficient expansion outside [-1,1]
  for (int d : {3, 7, 10}) {
    const UnivariatePoly poly = UnivariatePoly::chebyshev(d);
    for (double x : {1.05, 1.4, 2.5, -1.3}) {
      const double a = chebyshev_eval(d, x);
      const double b = poly.eval(x);
      CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)));
    }
  }

  // bounded by 1 on a dense grid of [-1, 1]
  for (int d : {1, 4, 9}) {
    double worst = 0.0;
    for (int i = 0; i <= 2000; ++i) {
      const double x = -1.0 + 2.0 * i / 2000.0;
      worst = std::max(worst, std::abs(chebyshev_eval(d, x)));
    }
    CHECK(worst <= 1.0 + 1e-12);
  }
}

TEST_CASE("growth inequality holds on the full grid") {
  PaturiCheck at_zero = paturi_check(7, 0.0);
  CHECK(at_zero.lhs == doctest::Approx(1.0));
  CHECK(at_zero.rhs == doctest::Approx(1.0));
  CHECK(at_zero.holds);
  CHECK(paturi_check(50, 0.1).holds);
  CHECK_THROWS_AS(paturi_check(3, -0.5), std::invalid_argument);

  bool grid_holds = true;
  for (int d = 1; d <= 200; ++d)
    for (int i = 0; i <= 300; ++i)
      if (!paturi_check(d, 0.01 * i).holds) grid_holds = false;
  CHECK(grid_holds);

  // log-space path stays finite where the direct value overflows
  PaturiCheck huge = paturi_check(600, 3.0);
  CHECK(std::isinf(huge.lhs));
  CHECK(std::isfinite(huge.log_lhs));
  CHECK(huge.holds);
}

TEST_CASE("extremal growth check") {
  const std::vector<double> xs = {1.1, 1.5, 2.0, 3.0};
  CHECK(extremal_check(UnivariatePoly::chebyshev(8), xs));  // equality case
  CHECK(extremal_check(UnivariatePoly::constant(1.0), xs));

  UnivariatePoly too_big = UnivariatePoly::constant(1.5);
  CHECK_THROWS_AS(extremal_check(too_big, xs), std::invalid_argument);

  Rng rng(17);
  for (int sample = 0; sample < 1000; ++sample) {
    std::vector<double> values(9);
    for (auto& v : values) v = 2.0 * rng.uniform() - 1.0;
    UnivariatePoly q = UnivariatePoly::from_extremal_values(values);
    const double m = q.max_abs_on_grid(-1.0, 1.0);
    if (m > 1.0) q = q.scaled(1.0 / (m * (1.0 + 1e-12)));
    CHECK(extremal_check(q, xs));
  }
}

TEST_CASE("extremal-node interpolation reproduces its values") {
  Rng rng(23);
  std::vector<double> values(9);
  for (auto& v : values) v = 2.0 * rng.uniform() - 1.0;
  UnivariatePoly q = UnivariatePoly::from_extremal_values(values);
  CHECK(q.degree() <= 8);
  for (int i = 0; i <= 8; ++i) {
    const double x = std::cos(3.14159265358979323846 * i / 8.0);
    CHECK(q.eval(x) == doctest::Approx(values[i]).epsilon(1e-9));
  }
}

TEST_CASE("symmetrize averages over Hamming weights") {
  AcceptanceTable constant;
  constant.n = 3;
  constant.prob.assign(8, 0.375);
  WeightProfile prof = symmetrize(constant);
  for (double v : prof.values) CHECK(v == doctest::Approx(0.375));

  // table = x_0 on N = 2: Q = (0, 1/2, 1)
  AcceptanceTable dictator;
  dictator.n = 2;
  dictator.prob = {0.0, 1.0, 0.0, 1.0};
  prof = symmetrize(dictator);
  CHECK(prof.values[0] == doctest::Approx(0.0));
  CHECK(prof.values[1] == doctest::Approx(0.5));
  CHECK(prof.values[2] == doctest::Approx(1.0));

  // OR acceptance on N = 3: Q = (0, 1, 1, 1)
  AcceptanceTable orf;
  orf.n = 3;
  orf.prob.assign(8, 1.0);
  orf.prob[0] = 0.0;
  prof = symmetrize(orf);
  CHECK(prof.values[0] == 0.0);
  for (int w = 1; w <= 3; ++w) CHECK(prof.values[w] == doctest::Approx(1.0));

  AcceptanceTable incomplete;
  incomplete.n = 3;
  incomplete.prob.assign(5, 0.0);
  CHECK_THROWS_AS(symmetrize(incomplete), std::invalid_argument);
}

TEST_CASE("degree detection by finite differences") {
  WeightProfile orprof;
  orprof.n = 3;
  orprof.values = {0.0, 1.0, 1.0, 1.0};
  const int detected = degree_via_differences(orprof);
  CHECK(detected == 3);
  CHECK(detected == interpolation_degree(orprof.values, 1e-7));

  WeightProfile constant;
  constant.n = 5;
  constant.values.assign(6, 0.25);
  CHECK(degree_via_differences(constant) == 0);

  // quadratic profile is recognized as degree 2
  WeightProfile quad;
  quad.n = 6;
  for (int k = 0; k <= 6; ++k) quad.values.push_back(0.01 * k * k + 0.2);
  CHECK(degree_via_differences(quad) == 2);
  CHECK(interpolation_degree(quad.values, 1e-9) == 2);
}

TEST_CASE("error lower bounds") {
  CHECK(b_floor() == doctest::Approx(0.0416493128).epsilon(1e-8));
  CHECK(b_floor() < 0.05);

  BoundParams unit{1.0, 0.0};
  CHECK(unit.effective_b() == doctest::Approx(b_floor()));

  // T = 0, t = 1, a = 1: the bound is 1 (any zero-query algorithm errs)
  auto top = search_error_lower_bound(100, 1, 0.0, BoundParams{1.0, 0.042});
  REQUIRE(top.has_value());
  CHECK(*top == doctest::Approx(1.0));

  // direct numeric value at N=100, t=1, T=10, a=1, b=0.042
  auto v = search_error_lower_bound(100, 1, 10.0, BoundParams{1.0, 0.042});
  REQUIRE(v.has_value());
  const double expect = std::exp(-4.0 * 0.042 * 100.0 / 99.0 - 8.0 * 10.0 * 10.0 / 99.0);
  CHECK(*v == doctest::Approx(expect).epsilon(1e-12));

  // degree-form bound at d = 2T matches the query-form bound exactly
  for (double big_t : {1.0, 5.0, 17.0}) {
    auto a = search_error_lower_bound(64, 4, big_t, BoundParams{2.0, 0.05});
    auto b = degree_error_lower_bound(64, 4, 2.0 * big_t, BoundParams{2.0, 0.05});
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(*a == doctest::Approx(*b));
  }
  CHECK(degree_error_lower_bound(64, 4, 0.0, BoundParams{2.0, 0.05}).value() ==
        doctest::Approx(0.5));

  // vacuous regime flagged, not computed
  CHECK_FALSE(search_error_lower_bound(16, 8, 5.0).has_value());
  CHECK_THROWS_AS(search_error_lower_bound(16, 0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(search_error_lower_bound(16, 16, 1.0), std::invalid_argument);

  // monotone decreasing in T and in t
  BoundParams params{1.0, 0.0416};
  double prev = 1.0;
  for (double big_t = 0.0; big_t <= 30.0; big_t += 1.0) {
    const double cur = search_error_lower_bound(4096, 8, big_t, params).value();
    CHECK(cur <= prev + 1e-15);
    prev = cur;
  }
  prev = 1.0;
  for (std::size_t t = 1; t <= 64; t *= 2) {
    const double cur = search_error_lower_bound(4096, t, 16.0, params).value();
    CHECK(cur <= prev + 1e-15);
    prev = cur;
  }
}
