#pragma once

#include <string>
#include <vector>

#include "sweatpp/rng.hpp"

namespace sweatpp {

// One-dimensional prior component. Supported family: gamma(shape, scale),
// uniform(a, b) (a == b is a point mass), improper uniform on [a, inf).
class PriorComponent {
 public:
  enum class Kind { gamma, uniform, improper_uniform };

  static PriorComponent gamma(double shape, double scale);
  static PriorComponent uniform(double a, double b);
  static PriorComponent improper_uniform(double a);

  Kind kind() const { return kind_; }
  double a() const { return a_; }
  double b() const { return b_; }

  bool proper() const { return kind_ != Kind::improper_uniform; }
  bool in_support(double x) const;
  // Log density; the improper component returns 0 on its support so only
  // ratios are meaningful there.
  double log_density(double x) const;
  double sample(Rng& rng) const;  // throws for the improper component
  double quantile(double q) const;

  // Proposal scale used to seed adaptive MCMC: 10% of the interquartile
  // range, with 10 px standing in for the improper component.
  double initial_scale() const;

 private:
  PriorComponent(Kind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}
  Kind kind_;
  double a_;
  double b_;
};

struct Prior {
  std::vector<std::string> names;
  std::vector<PriorComponent> components;

  std::size_t dim() const { return components.size(); }
  bool proper() const;
  bool in_support(const std::vector<double>& x) const;
  double log_density(const std::vector<double>& x) const;
  std::vector<double> sample(Rng& rng) const;
};

// Priors used for the two model fits: R ~ gamma(3, 70/3), kappa and theta
// uniform on [0,1] for the mixture model; R improper uniform on [40, inf),
// sigma ~ gamma(10/3, 3), p uniform on [0.1, 1] for the generative model.
Prior mixture_default_prior();
Prior generative_default_prior();

}  // namespace sweatpp
