#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sweatpp/priors.hpp"
#include "sweatpp/rng.hpp"

namespace sweatpp {

struct Chain {
  std::vector<std::vector<double>> draws;  // iterations x dim
  std::vector<double> log_post;
  std::vector<std::uint8_t> accepted;
  std::vector<double> proposal_factor;  // final lower-triangular S, row-major
  std::size_t chol_failures = 0;        // refused adaptation steps

  double acceptance_rate() const;
};

// The proposal-covariance adaptation shared by ram_mcmc and the ABC chain.
// The proposal is x + S u with u standard normal; after every step S is
// updated so that S S^T gains the rank-one term
// eta_n (alpha_n - target) (Su)(Su)^T / |u|^2 with eta_n = min(1, d n^-2/3),
// alpha_n being the step's acceptance probability. Updates that stop being
// positive definite are refused and counted.
class RamAdapter {
 public:
  RamAdapter(std::vector<double> s0_diag, double target_rate);

  // Fills y = x + S u with fresh u; remembers u and Su for the next adapt().
  void propose(const std::vector<double>& x, Rng& rng, std::vector<double>& y);
  void adapt(double alpha, std::size_t step);

  const std::vector<double>& factor() const { return s_; }
  std::size_t chol_failures() const { return chol_failures_; }

 private:
  std::size_t d_;
  double target_;
  std::vector<double> s_;  // lower triangular, row-major
  std::vector<double> u_, su_, m_, scratch_;
  double u_norm_sq_ = 0.0;
  std::size_t chol_failures_ = 0;
};

// Robust adaptive Metropolis. Proposals outside the prior's support are
// rejected without evaluating log_posterior; the prior also sets the initial
// proposal scale (diagonal of 10% interquartile ranges). log_posterior is
// expected to already include the prior term.
Chain ram_mcmc(const std::function<double(const std::vector<double>&)>&
                   log_posterior,
               const Prior& prior, const std::vector<double>& init,
               std::size_t iterations, double target_rate, Rng& rng);

}  // namespace sweatpp
