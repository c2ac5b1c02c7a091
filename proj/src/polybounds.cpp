#include "qqw/polybounds.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qqw {
namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// log(cosh(y)) without overflow.
double log_cosh(double y) {
  y = std::abs(y);
  return y + std::log1p(std::exp(-2.0 * y)) - std::log(2.0);
}

}  // namespace

int UnivariatePoly::degree() const {
  for (std::size_t i = coeffs.size(); i-- > 0;)
    if (coeffs[i] != 0.0) return static_cast<int>(i);
  return 0;
}

double UnivariatePoly::eval(double x) const {
  double acc = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

UnivariatePoly UnivariatePoly::constant(double c) { return UnivariatePoly{{c}}; }

UnivariatePoly UnivariatePoly::chebyshev(int d) {
  if (d < 0) throw std::invalid_argument("chebyshev: degree must be >= 0");
  UnivariatePoly prev = constant(1.0);
  if (d == 0) return prev;
  UnivariatePoly cur{{0.0, 1.0}};
  const UnivariatePoly two_x{{0.0, 2.0}};
  for (int i = 1; i < d; ++i) {
    UnivariatePoly next = two_x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

UnivariatePoly UnivariatePoly::operator+(const UnivariatePoly& o) const {
  UnivariatePoly r;
  r.coeffs.resize(std::max(coeffs.size(), o.coeffs.size()), 0.0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) r.coeffs[i] += coeffs[i];
  for (std::size_t i = 0; i < o.coeffs.size(); ++i) r.coeffs[i] += o.coeffs[i];
  return r;
}

UnivariatePoly UnivariatePoly::operator-(const UnivariatePoly& o) const {
  return *this + o.scaled(-1.0);
}

UnivariatePoly UnivariatePoly::operator*(const UnivariatePoly& o) const {
  if (coeffs.empty() || o.coeffs.empty()) return {};
  UnivariatePoly r;
  r.coeffs.assign(coeffs.size() + o.coeffs.size() - 1, 0.0);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs.size(); ++j) r.coeffs[i + j] += coeffs[i] * o.coeffs[j];
  return r;
}

UnivariatePoly UnivariatePoly::scaled(double s) const {
  UnivariatePoly r = *this;
  for (auto& c : r.coeffs) c *= s;
  return r;
}

UnivariatePoly UnivariatePoly::from_extremal_values(const std::vector<double>& values) {
  if (values.size() < 2)
    throw std::invalid_argument("from_extremal_values: need at least two nodes");
  const int d = static_cast<int>(values.size()) - 1;
  // Chebyshev coefficients via the discrete cosine transform over the
  // extremal nodes x_i = cos(i pi / d), with half-weight endpoints.
  std::vector<double> cheb_coeffs(d + 1, 0.0);
  for (int j = 0; j <= d; ++j) {
    double acc = 0.0;
    for (int i = 0; i <= d; ++i) {
      const double weight = (i == 0 || i == d) ? 0.5 : 1.0;
      acc += weight * values[i] * std::cos(kPi * j * i / d);
    }
    const double norm = (j == 0 || j == d) ? 1.0 / d : 2.0 / d;
    cheb_coeffs[j] = norm * acc;
  }
  UnivariatePoly p;
  for (int j = 0; j <= d; ++j) p = p + chebyshev(j).scaled(cheb_coeffs[j]);
  return p;
}

double UnivariatePoly::max_abs_on_grid(double lo, double hi, std::size_t points) const {
  double m = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    m = std::max(m, std::abs(eval(x)));
  }
  return m;
}

double chebyshev_eval(int d, double x) {
  if (d < 0) throw std::invalid_argument("chebyshev_eval: degree must be >= 0");
  if (std::abs(x) <= 1.0) {
    double prev = 1.0, cur = x;
    if (d == 0) return 1.0;
    for (int i = 1; i < d; ++i) {
      const double next = 2.0 * x * cur - prev;
      prev = cur;
      cur = next;
    }
    return cur;
  }
  const double ax = std::abs(x);
  const double r = ax + std::sqrt(ax * ax - 1.0);
  const double value = 0.5 * (std::pow(r, d) + std::pow(r, -d));
  const bool negate = x < 0.0 && (d % 2 == 1);
  return negate ? -value : value;
}

PaturiCheck paturi_check(int d, double mu) {
  if (mu < 0.0) throw std::invalid_argument("paturi_check: mu must be >= 0");
  PaturiCheck r;
  const double x = 1.0 + mu;
  const double acosh_x = std::acosh(x);
  r.log_lhs = log_cosh(d * acosh_x);  // T_d(x) = cosh(d acosh x) for x >= 1
  r.log_rhs = 2.0 * d * std::sqrt(2.0 * mu + mu * mu);
  r.lhs = std::exp(r.log_lhs);
  r.rhs = std::exp(r.log_rhs);
  r.holds = r.log_lhs <= r.log_rhs + std::log1p(1e-12);
  return r;
}

bool extremal_check(const UnivariatePoly& q, const std::vector<double>& xs) {
  if (q.max_abs_on_grid(-1.0, 1.0) > 1.0 + 1e-9)
    throw std::invalid_argument("extremal_check: q exceeds 1 on [-1,1]");
  const int d = q.degree();
  for (double x : xs) {
    if (x < 1.0) throw std::invalid_argument("extremal_check: sample points must be >= 1");
    if (std::abs(q.eval(x)) > std::abs(chebyshev_eval(d, x)) + 1e-9) return false;
  }
  return true;
}

WeightProfile symmetrize(const AcceptanceTable& table) {
  const std::size_t expected = std::size_t{1} << table.n;
  if (table.prob.size() != expected)
    throw std::invalid_argument("symmetrize: acceptance table is incomplete");
  WeightProfile prof;
  prof.n = table.n;
  prof.values.assign(table.n + 1, 0.0);
  std::vector<double> counts(table.n + 1, 0.0);
  for (std::size_t mask = 0; mask < expected; ++mask) {
    const int w = std::popcount(mask);
    prof.values[w] += table.prob[mask];
    counts[w] += 1.0;
  }
  for (std::size_t w = 0; w <= table.n; ++w) prof.values[w] /= counts[w];
  return prof;
}

int degree_via_differences(const WeightProfile& profile, double rel_tol) {
  const std::size_t m = profile.values.size();
  if (m == 0) return 0;
  double scale = 0.0;
  for (double v : profile.values) scale = std::max(scale, std::abs(v));
  const double tol = rel_tol * std::max(scale, 1e-30);

  std::vector<double> diff = profile.values;
  int degree = 0;
  for (std::size_t order = 1; order < m; ++order) {
    for (std::size_t i = 0; i + order < m; ++i) diff[i] = diff[i + 1] - diff[i];
    bool nonzero = false;
    for (std::size_t i = 0; i + order < m; ++i)
      if (std::abs(diff[i]) > tol) {
        nonzero = true;
        break;
      }
    if (nonzero) degree = static_cast<int>(order);
  }
  return degree;
}

double BoundParams::effective_b() const { return b > 0.0 ? b : b_floor(); }

double b_floor() { return 1.0 / (4.0 * 2.45 * 2.45); }

std::optional<double> search_error_lower_bound(std::size_t n, std::size_t t, double big_t,
                                               const BoundParams& params) {
  return degree_error_lower_bound(n, t, 2.0 * big_t, params);
}

std::optional<double> degree_error_lower_bound(std::size_t n, std::size_t t, double d,
                                               const BoundParams& params) {
  if (t < 1 || t >= n) throw std::invalid_argument("error bound: need 1 <= t < N");
  if (d < 0.0) throw std::invalid_argument("error bound: degree must be >= 0");
  const double gap = static_cast<double>(n - t);
  if (d > gap) return std::nullopt;  // bound is vacuous in this regime
  const double b = params.effective_b();
  const double root = std::sqrt(static_cast<double>(t) * static_cast<double>(n)) / gap;
  const double exponent = -b * d * d / gap - 4.0 * d * root;
  const double value = std::exp(exponent) / params.a;
  return std::min(1.0, std::max(0.0, value));
}

}  // namespace qqw
