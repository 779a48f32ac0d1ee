#pragma once

namespace sweatpp {

// log(exp(a) + exp(b)); tolerates -inf arguments.
double log_sum_exp(double a, double b);

// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double reg_lower_inc_gamma(double a, double x);

// Quantile of Gamma(shape, scale) at probability q in (0,1).
double gamma_quantile(double shape, double scale, double q);

// CDF of the chi-square distribution with k degrees of freedom.
double chi_square_cdf(double x, double k);

}  // namespace sweatpp
