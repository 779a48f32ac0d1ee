#pragma once

#include <functional>
#include <vector>

#include "sweatpp/quadrature.hpp"
#include "sweatpp/ram.hpp"
#include "sweatpp/sequential.hpp"

namespace sweatpp {

enum class SeqModel { softcore, mixture };

struct NelderMeadResult {
  std::vector<double> x;
  double fmin = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

// Minimizes f. The initial simplex is init plus one vertex per coordinate at
// init + step e_i; stops when the simplex diameter (max distance of any
// vertex from the best, coordinatewise) drops below tol.
NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& init, double step, double tol,
    std::size_t max_iterations);

struct MleResult {
  std::vector<double> params;  // (R, kappa) or (R, kappa, theta)
  double loglik = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

// Maximum likelihood via Nelder-Mead on transformed coordinates (log R,
// logit kappa, logit theta), which keeps every simplex vertex feasible.
// init is in natural coordinates. fix_theta pins theta at its init value so
// the constrained mixture fit can be compared against the plain fit.
MleResult fit_mle(const PointPattern& pattern, SeqModel model,
                  const QuadratureScheme& quad,
                  const std::vector<double>& init, bool fix_theta = false);

// RAM chain on (R, kappa, theta) with log posterior = mixture log likelihood
// plus log prior; returns the post-burn-in part of the chain.
Chain fit_bayes_mixture(const PointPattern& pattern,
                        const QuadratureScheme& quad, const Prior& prior,
                        std::size_t iterations, std::size_t burn_in,
                        Rng& rng);

}  // namespace sweatpp
