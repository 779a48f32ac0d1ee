#include "sweatpp/ram.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sweatpp {

namespace {

// Dense Cholesky of a small symmetric matrix (row-major). Returns false
// instead of throwing when the matrix is not positive definite.
bool cholesky(const std::vector<double>& m, std::size_t d,
              std::vector<double>& out) {
  out.assign(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = m[i * d + j];
      for (std::size_t k = 0; k < j; ++k)
        sum -= out[i * d + k] * out[j * d + k];
      if (i == j) {
        if (!(sum > 0.0) || !std::isfinite(sum)) return false;
        out[i * d + i] = std::sqrt(sum);
      } else {
        out[i * d + j] = sum / out[j * d + j];
      }
    }
  }
  return true;
}

}  // namespace

double Chain::acceptance_rate() const {
  if (accepted.empty()) return 0.0;
  std::size_t count = 0;
  for (const auto a : accepted) count += a;
  return static_cast<double>(count) / static_cast<double>(accepted.size());
}

RamAdapter::RamAdapter(std::vector<double> s0_diag, double target_rate)
    : d_(s0_diag.size()), target_(target_rate) {
  if (d_ == 0) throw std::invalid_argument("RamAdapter needs dimension >= 1");
  if (!(target_rate > 0.0 && target_rate < 1.0))
    throw std::invalid_argument("target_rate must lie in (0,1)");
  s_.assign(d_ * d_, 0.0);
  for (std::size_t i = 0; i < d_; ++i) s_[i * d_ + i] = s0_diag[i];
  u_.resize(d_);
  su_.resize(d_);
  m_.resize(d_ * d_);
  scratch_.resize(d_ * d_);
}

void RamAdapter::propose(const std::vector<double>& x, Rng& rng,
                         std::vector<double>& y) {
  y.resize(d_);
  u_norm_sq_ = 0.0;
  for (std::size_t i = 0; i < d_; ++i) {
    u_[i] = rng.normal();
    u_norm_sq_ += u_[i] * u_[i];
  }
  for (std::size_t i = 0; i < d_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j <= i; ++j) s += s_[i * d_ + j] * u_[j];
    su_[i] = s;
    y[i] = x[i] + s;
  }
}

void RamAdapter::adapt(double alpha, std::size_t step) {
  if (u_norm_sq_ <= 0.0) return;
  const double eta = std::min(
      1.0, static_cast<double>(d_) *
               std::pow(static_cast<double>(step), -2.0 / 3.0));
  const double c = eta * (alpha - target_) / u_norm_sq_;
  for (std::size_t i = 0; i < d_; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double ss = 0.0;
      for (std::size_t k = 0; k <= j; ++k)
        ss += s_[i * d_ + k] * s_[j * d_ + k];
      const double v = ss + c * su_[i] * su_[j];
      m_[i * d_ + j] = v;
      m_[j * d_ + i] = v;
    }
  if (cholesky(m_, d_, scratch_))
    s_.swap(scratch_);
  else
    ++chol_failures_;
}

Chain ram_mcmc(const std::function<double(const std::vector<double>&)>&
                   log_posterior,
               const Prior& prior, const std::vector<double>& init,
               std::size_t iterations, double target_rate, Rng& rng) {
  const std::size_t d = prior.dim();
  if (d == 0) throw std::invalid_argument("ram_mcmc needs parameters");
  if (init.size() != d)
    throw std::invalid_argument("init has wrong dimension");
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (!prior.in_support(init))
    throw std::invalid_argument("init outside prior support");

  std::vector<double> x = init;
  double lp = log_posterior(x);
  if (!std::isfinite(lp))
    throw std::invalid_argument("log posterior not finite at init");

  std::vector<double> s0(d);
  for (std::size_t i = 0; i < d; ++i)
    s0[i] = prior.components[i].initial_scale();
  RamAdapter adapter(std::move(s0), target_rate);

  Chain chain;
  chain.draws.reserve(iterations);
  chain.log_post.reserve(iterations);
  chain.accepted.reserve(iterations);

  std::vector<double> y(d);
  for (std::size_t n = 1; n <= iterations; ++n) {
    adapter.propose(x, rng, y);
    double alpha = 0.0;
    bool accept = false;
    if (prior.in_support(y)) {
      const double lpy = log_posterior(y);
      if (lpy > -std::numeric_limits<double>::infinity()) {
        alpha = lpy >= lp ? 1.0 : std::exp(lpy - lp);
        if (rng.uniform() < alpha) {
          x = y;
          lp = lpy;
          accept = true;
        }
      }
    }
    chain.draws.push_back(x);
    chain.log_post.push_back(lp);
    chain.accepted.push_back(accept ? 1 : 0);
    adapter.adapt(alpha, n);
  }
  chain.proposal_factor = adapter.factor();
  chain.chol_failures = adapter.chol_failures();
  return chain;
}

}  // namespace sweatpp
