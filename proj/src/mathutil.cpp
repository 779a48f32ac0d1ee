#include "sweatpp/mathutil.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sweatpp {

double log_sum_exp(double a, double b) {
  const double inf = std::numeric_limits<double>::infinity();
  if (a == -inf) return b;
  if (b == -inf) return a;
  const double m = a > b ? a : b;
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

namespace {

// Series expansion, converges well for x < a + 1.
double lower_gamma_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < 1000; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for Q(a, x), good for x >= a + 1.
double upper_gamma_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double reg_lower_inc_gamma(double a, double x) {
  if (!(a > 0.0)) throw std::invalid_argument("incomplete gamma needs a > 0");
  if (x < 0.0) throw std::invalid_argument("incomplete gamma needs x >= 0");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return lower_gamma_series(a, x);
  return 1.0 - upper_gamma_cf(a, x);
}

double gamma_quantile(double shape, double scale, double q) {
  if (!(shape > 0.0) || !(scale > 0.0))
    throw std::invalid_argument("gamma quantile needs positive parameters");
  if (!(q > 0.0 && q < 1.0))
    throw std::invalid_argument("quantile probability must lie in (0,1)");
  // Bisection on P(shape, x); monotone, so plain and safe.
  double lo = 0.0;
  double hi = shape + 1.0;
  while (reg_lower_inc_gamma(shape, hi) < q) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (reg_lower_inc_gamma(shape, mid) < q)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-12 * (1.0 + hi)) break;
  }
  return scale * 0.5 * (lo + hi);
}

double chi_square_cdf(double x, double k) {
  if (x <= 0.0) return 0.0;
  return reg_lower_inc_gamma(0.5 * k, 0.5 * x);
}

}  // namespace sweatpp
