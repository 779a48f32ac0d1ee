#pragma once

#include <cstdint>
#include <vector>

#include "sweatpp/geometry.hpp"
#include "sweatpp/quadrature.hpp"
#include "sweatpp/rng.hpp"

namespace sweatpp {

struct SoftcoreParams {
  double R = 0.0;      // inhibition range, pixels
  double kappa = 0.0;  // softness, in (0,1)
};

struct MixtureParams {
  SoftcoreParams softcore;
  double theta = 0.0;  // uniform-noise mixing probability, in [0,1]
};

// -sum_i (R/d(y,x_i))^(2/kappa); 0 for an empty prefix, -inf if y coincides
// with a prefix point.
double softcore_log_potential(const Point& y, const std::vector<Point>& prefix,
                              const SoftcoreParams& params);

// Repeated likelihood evaluation on one (pattern, quadrature) pair. The
// construction cost is the full log-squared-distance tables (nodes to points
// and point pairs); each evaluation is then O(Jn) exponentials with no
// distance recomputation, which is what makes optimization and MCMC on top
// of this likelihood affordable.
class SequentialLoglik {
 public:
  SequentialLoglik(const PointPattern& pattern, const QuadratureScheme& quad);

  // log Z_k = -log sum_j w_j exp(-S_j(k)) for k = 2..n, via one running sum
  // per node.
  std::vector<double> normalizer_series(const SoftcoreParams& params) const;

  double softcore_loglik(const SoftcoreParams& params) const;
  double mixture_loglik(const MixtureParams& params) const;

  std::size_t n() const { return n_; }
  double log_area() const { return log_area_; }

 private:
  std::size_t n_ = 0;
  std::size_t nodes_ = 0;
  double log_area_ = 0.0;
  // log squared distances, point-major: node_lsd_[i*J + j] = log d^2(y_j, x_i)
  std::vector<double> node_lsd_;
  std::vector<double> node_weight_;
  // lower triangle: pair_lsd_[k(k-1)/2 + i] = log d^2(x_k, x_i), i < k
  std::vector<double> pair_lsd_;
  mutable std::vector<double> node_sum_;  // scratch S_j, reused per eval

  double eval(const SoftcoreParams& params, double theta) const;
};

// One-shot wrappers over SequentialLoglik.
std::vector<double> log_normalizer_series(const PointPattern& pattern,
                                          const SoftcoreParams& params,
                                          const QuadratureScheme& quad);
double seq_loglik(const PointPattern& pattern, const SoftcoreParams& params,
                  const QuadratureScheme& quad);
double mixture_loglik(const PointPattern& pattern, const MixtureParams& params,
                      const QuadratureScheme& quad);

// Forward simulation of the arrival model. The first point is uniform; each
// later point is drawn exactly from its conditional density by rejection
// (uniform proposal, acceptance probability exp(log potential)). Exceeding
// max_proposals uniform proposals for a single point throws.
PointPattern simulate_mixture(std::size_t n, const MixtureParams& params,
                              const Window& window, Rng& rng,
                              std::uint64_t max_proposals = 10000000);
PointPattern simulate_sequential(std::size_t n, const SoftcoreParams& params,
                                 const Window& window, Rng& rng,
                                 std::uint64_t max_proposals = 10000000);

}  // namespace sweatpp
