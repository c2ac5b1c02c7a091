#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qqw/rng.hpp"
#include "qqw/statevector.hpp"

namespace qqw {

// Numeric toolkit: Chebyshev machinery, growth-bound checks, symmetrization
// of acceptance tables, degree detection by finite differences, and the
// closed-form error lower bounds for promise search.

struct UnivariatePoly {
  std::vector<double> coeffs;  // ascending degree; empty means the zero polynomial

  int degree() const;
  double eval(double x) const;

  static UnivariatePoly constant(double c);
  static UnivariatePoly chebyshev(int d);  // T_d in coefficient form

  UnivariatePoly operator+(const UnivariatePoly& o) const;
  UnivariatePoly operator-(const UnivariatePoly& o) const;
  UnivariatePoly operator*(const UnivariatePoly& o) const;
  UnivariatePoly scaled(double s) const;

  // Interpolant through the d+1 Chebyshev extremal nodes cos(i pi / d)
  // taking the given values (values[i] at node i).
  static UnivariatePoly from_extremal_values(const std::vector<double>& values);

  double max_abs_on_grid(double lo, double hi, std::size_t points = 2001) const;
};

// T_d(x): three-term recurrence on [-1, 1], closed form outside.
double chebyshev_eval(int d, double x);

struct PaturiCheck {
  double lhs = 0.0;      // T_d(1 + mu), may overflow to inf for huge d*mu
  double rhs = 0.0;      // exp(2 d sqrt(2 mu + mu^2))
  double log_lhs = 0.0;  // evaluated in log space, always finite
  double log_rhs = 0.0;
  bool holds = false;
};

// Checks T_d(1+mu) <= e^{2 d sqrt(2 mu + mu^2)}; comparison in log space.
PaturiCheck paturi_check(int d, double mu);

// Checks |q(x)| <= |T_d(x)| + 1e-9 at every sample point >= 1; requires q to
// be bounded by 1 + 1e-9 on a dense [-1,1] grid first.
bool extremal_check(const UnivariatePoly& q, const std::vector<double>& xs);

// Symmetrized acceptance values Q(0..N): mean acceptance over inputs of each
// Hamming weight.
struct WeightProfile {
  std::size_t n = 0;
  std::vector<double> values;  // size n+1
};

WeightProfile symmetrize(const AcceptanceTable& table);

// Smallest d such that all finite differences of order > d vanish within a
// relative tolerance of 1e-7 (scaled by max |Q|).
int degree_via_differences(const WeightProfile& profile, double rel_tol = 1e-7);

// The two universal constants of the growth bound; the literature gives no
// explicit values, so they are parameters with conservative defaults.
struct BoundParams {
  double a = 1.0;
  double b = 0.0;  // 0 means "use b_floor()"

  double effective_b() const;
};

// Lower bound on the b constant implied by the refined search constant 2.45:
// 1 / (4 * 2.45^2).
double b_floor();

// Error lower bound for T-query search under an at-least-t-solutions
// promise: (1/a) exp(-4 b T^2/(N-t) - 8 T sqrt(tN)/(N-t)), clamped to [0,1].
// Vacuous (nullopt) when T > N - t.
std::optional<double> search_error_lower_bound(std::size_t n, std::size_t t, double big_t,
                                               const BoundParams& params = {});

// Same bound stated for polynomial degree d (with d = 2T substitution):
// (1/a) exp(-b d^2/(N-t) - 4 d sqrt(tN)/(N-t)).
std::optional<double> degree_error_lower_bound(std::size_t n, std::size_t t, double d,
                                               const BoundParams& params = {});

}  // namespace qqw
