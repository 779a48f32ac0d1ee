#include "sweatpp/sequential.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sweatpp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_params(const SoftcoreParams& p) {
  if (!(p.R > 0.0)) throw std::invalid_argument("R must be positive");
  if (!(p.kappa > 0.0 && p.kappa < 1.0))
    throw std::invalid_argument("kappa must lie in (0,1)");
}

// log(exp(a) + exp(b)) with -inf treated as an absent branch.
double lse2(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double m = a > b ? a : b;
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

}  // namespace

double softcore_log_potential(const Point& y, const std::vector<Point>& prefix,
                              const SoftcoreParams& params) {
  check_params(params);
  const double inv_kappa = 1.0 / params.kappa;
  const double log_r2 = 2.0 * std::log(params.R);
  double pot = 0.0;
  for (const Point& x : prefix) {
    const double d2 = squared_distance(y, x);
    // (R/d)^(2/kappa) = exp((log R^2 - log d^2)/kappa); d = 0 gives +inf.
    pot += std::exp(inv_kappa * (log_r2 - std::log(d2)));
  }
  return -pot;
}

SequentialLoglik::SequentialLoglik(const PointPattern& pattern,
                                   const QuadratureScheme& quad) {
  validate_pattern(pattern);
  if (pattern.points.empty())
    throw std::invalid_argument("likelihood needs a non-empty pattern");
  if (quad.nodes.empty() || quad.nodes.size() != quad.weights.size())
    throw std::invalid_argument("malformed quadrature scheme");

  n_ = pattern.points.size();
  nodes_ = quad.nodes.size();
  log_area_ = std::log(pattern.window.area());
  node_weight_ = quad.weights;
  node_sum_.resize(nodes_);

  // x_n never enters any prefix, so its node distances are not needed.
  const std::size_t prefix_points = n_ - 1;
  node_lsd_.resize(prefix_points * nodes_);
  for (std::size_t i = 0; i < prefix_points; ++i) {
    const Point& x = pattern.points[i];
    double* row = node_lsd_.data() + i * nodes_;
    for (std::size_t j = 0; j < nodes_; ++j)
      row[j] = std::log(squared_distance(quad.nodes[j], x));
  }

  pair_lsd_.resize(n_ * (n_ - 1) / 2);
  std::size_t idx = 0;
  for (std::size_t k = 1; k < n_; ++k)
    for (std::size_t i = 0; i < k; ++i)
      pair_lsd_[idx++] =
          std::log(squared_distance(pattern.points[k], pattern.points[i]));
}

std::vector<double> SequentialLoglik::normalizer_series(
    const SoftcoreParams& params) const {
  check_params(params);
  if (n_ < 2)
    throw std::invalid_argument("normalizer series needs at least 2 points");
  const double inv_kappa = 1.0 / params.kappa;
  const double log_r2 = 2.0 * std::log(params.R);

  std::vector<double> series;
  series.reserve(n_ - 1);
  std::fill(node_sum_.begin(), node_sum_.end(), 0.0);
  for (std::size_t k = 1; k < n_; ++k) {
    const double* row = node_lsd_.data() + (k - 1) * nodes_;
    double m = kInf;
    for (std::size_t j = 0; j < nodes_; ++j) {
      node_sum_[j] += std::exp(inv_kappa * (log_r2 - row[j]));
      if (node_sum_[j] < m) m = node_sum_[j];
    }
    if (m == kInf) {
      // Every node term diverged; the integral underflows to zero.
      series.push_back(kInf);
      continue;
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < nodes_; ++j)
      acc += node_weight_[j] * std::exp(m - node_sum_[j]);
    series.push_back(m - std::log(acc));
  }
  return series;
}

double SequentialLoglik::eval(const SoftcoreParams& params,
                              double theta) const {
  check_params(params);
  if (!(theta >= 0.0 && theta <= 1.0))
    throw std::invalid_argument("theta must lie in [0,1]");
  if (theta == 1.0) return -static_cast<double>(n_) * log_area_;
  if (n_ == 1) return -log_area_;

  const std::vector<double> series = normalizer_series(params);
  const double inv_kappa = 1.0 / params.kappa;
  const double log_r2 = 2.0 * std::log(params.R);
  const double log_theta_term =
      theta > 0.0 ? std::log(theta) - log_area_ : -kInf;
  const double log_one_minus_theta = theta > 0.0 ? std::log1p(-theta) : 0.0;

  double total = -log_area_;
  std::size_t idx = 0;
  for (std::size_t k = 1; k < n_; ++k) {
    double pot = 0.0;
    for (std::size_t i = 0; i < k; ++i)
      pot += std::exp(inv_kappa * (log_r2 - pair_lsd_[idx++]));
    const double z = series[k - 1];
    if (z == kInf) return -kInf;  // quadrature-degenerate parameters
    if (theta == 0.0) {
      total += z - pot;
    } else {
      total += lse2(log_one_minus_theta + z - pot, log_theta_term);
    }
    if (total == -kInf && theta == 0.0) break;
  }
  return total;
}

double SequentialLoglik::softcore_loglik(const SoftcoreParams& params) const {
  return eval(params, 0.0);
}

double SequentialLoglik::mixture_loglik(const MixtureParams& params) const {
  return eval(params.softcore, params.theta);
}

std::vector<double> log_normalizer_series(const PointPattern& pattern,
                                          const SoftcoreParams& params,
                                          const QuadratureScheme& quad) {
  return SequentialLoglik(pattern, quad).normalizer_series(params);
}

double seq_loglik(const PointPattern& pattern, const SoftcoreParams& params,
                  const QuadratureScheme& quad) {
  return SequentialLoglik(pattern, quad).softcore_loglik(params);
}

double mixture_loglik(const PointPattern& pattern, const MixtureParams& params,
                      const QuadratureScheme& quad) {
  return SequentialLoglik(pattern, quad).mixture_loglik(params);
}

PointPattern simulate_mixture(std::size_t n, const MixtureParams& params,
                              const Window& window, Rng& rng,
                              std::uint64_t max_proposals) {
  check_params(params.softcore);
  if (!(params.theta >= 0.0 && params.theta <= 1.0))
    throw std::invalid_argument("theta must lie in [0,1]");
  if (n < 1) throw std::invalid_argument("need at least one point");

  PointPattern pattern;
  pattern.window = window;
  pattern.points.reserve(n);
  pattern.points.push_back(
      {rng.uniform(0.0, window.width), rng.uniform(0.0, window.height)});
  while (pattern.points.size() < n) {
    // The short-circuit keeps the draw sequence at theta = 0 identical to
    // the pure arrival model's.
    if (params.theta > 0.0 && rng.uniform() < params.theta) {
      pattern.points.push_back(
          {rng.uniform(0.0, window.width), rng.uniform(0.0, window.height)});
      continue;
    }
    bool accepted = false;
    for (std::uint64_t attempt = 0; attempt < max_proposals; ++attempt) {
      const Point y{rng.uniform(0.0, window.width),
                    rng.uniform(0.0, window.height)};
      const double lp =
          softcore_log_potential(y, pattern.points, params.softcore);
      if (std::log(rng.uniform()) < lp) {
        pattern.points.push_back(y);
        accepted = true;
        break;
      }
    }
    if (!accepted)
      throw std::runtime_error(
          "window saturated: rejection sampler exceeded " +
          std::to_string(max_proposals) + " proposals for point " +
          std::to_string(pattern.points.size() + 1));
  }
  return pattern;
}

PointPattern simulate_sequential(std::size_t n, const SoftcoreParams& params,
                                 const Window& window, Rng& rng,
                                 std::uint64_t max_proposals) {
  return simulate_mixture(n, MixtureParams{params, 0.0}, window, rng,
                          max_proposals);
}

}  // namespace sweatpp
