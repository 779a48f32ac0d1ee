#include "sweatpp/priors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sweatpp/mathutil.hpp"

namespace sweatpp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

PriorComponent PriorComponent::gamma(double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0))
    throw std::invalid_argument("gamma prior needs positive shape and scale");
  return PriorComponent(Kind::gamma, shape, scale);
}

PriorComponent PriorComponent::uniform(double a, double b) {
  if (!(a <= b)) throw std::invalid_argument("uniform prior needs a <= b");
  return PriorComponent(Kind::uniform, a, b);
}

PriorComponent PriorComponent::improper_uniform(double a) {
  return PriorComponent(Kind::improper_uniform, a, kInf);
}

bool PriorComponent::in_support(double x) const {
  switch (kind_) {
    case Kind::gamma:
      return x > 0.0;
    case Kind::uniform:
      return x >= a_ && x <= b_;
    case Kind::improper_uniform:
      return x >= a_;
  }
  return false;
}

double PriorComponent::log_density(double x) const {
  if (!in_support(x)) return -kInf;
  switch (kind_) {
    case Kind::gamma:
      return (a_ - 1.0) * std::log(x) - x / b_ - std::lgamma(a_) -
             a_ * std::log(b_);
    case Kind::uniform:
      // Degenerate uniform is a point mass; density ratios at the atom are 1.
      return a_ == b_ ? 0.0 : -std::log(b_ - a_);
    case Kind::improper_uniform:
      return 0.0;
  }
  return -kInf;
}

double PriorComponent::sample(Rng& rng) const {
  switch (kind_) {
    case Kind::gamma:
      return rng.gamma(a_, b_);
    case Kind::uniform:
      return a_ == b_ ? a_ : rng.uniform(a_, b_);
    case Kind::improper_uniform:
      throw std::logic_error("an improper prior cannot be sampled");
  }
  return 0.0;
}

double PriorComponent::quantile(double q) const {
  if (!(q > 0.0 && q < 1.0))
    throw std::invalid_argument("quantile probability must lie in (0,1)");
  switch (kind_) {
    case Kind::gamma:
      return gamma_quantile(a_, b_, q);
    case Kind::uniform:
      return a_ + q * (b_ - a_);
    case Kind::improper_uniform:
      throw std::logic_error("an improper prior has no quantiles");
  }
  return 0.0;
}

double PriorComponent::initial_scale() const {
  if (kind_ == Kind::improper_uniform) return 10.0;
  return 0.1 * (quantile(0.75) - quantile(0.25));
}

bool Prior::proper() const {
  for (const auto& c : components)
    if (!c.proper()) return false;
  return true;
}

bool Prior::in_support(const std::vector<double>& x) const {
  if (x.size() != components.size())
    throw std::invalid_argument("parameter vector has wrong dimension");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!components[i].in_support(x[i])) return false;
  return true;
}

double Prior::log_density(const std::vector<double>& x) const {
  if (x.size() != components.size())
    throw std::invalid_argument("parameter vector has wrong dimension");
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    total += components[i].log_density(x[i]);
    if (total == -kInf) return -kInf;
  }
  return total;
}

std::vector<double> Prior::sample(Rng& rng) const {
  std::vector<double> x;
  x.reserve(components.size());
  for (const auto& c : components) x.push_back(c.sample(rng));
  return x;
}

Prior mixture_default_prior() {
  Prior prior;
  prior.names = {"R", "kappa", "theta"};
  prior.components = {PriorComponent::gamma(3.0, 70.0 / 3.0),
                      PriorComponent::uniform(0.0, 1.0),
                      PriorComponent::uniform(0.0, 1.0)};
  return prior;
}

Prior generative_default_prior() {
  Prior prior;
  prior.names = {"R", "sigma", "p"};
  prior.components = {PriorComponent::improper_uniform(40.0),
                      PriorComponent::gamma(10.0 / 3.0, 3.0),
                      PriorComponent::uniform(0.1, 1.0)};
  return prior;
}

}  // namespace sweatpp
