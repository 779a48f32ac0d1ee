#include "sweatpp/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sweatpp {

namespace {

constexpr double kKappaEps = 1e-6;

double logit(double p) { return std::log(p / (1.0 - p)); }

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double clamped_sigmoid(double t) {
  return std::clamp(sigmoid(t), kKappaEps, 1.0 - kKappaEps);
}

}  // namespace

NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& init, double step, double tol,
    std::size_t max_iterations) {
  const std::size_t d = init.size();
  if (d == 0) throw std::invalid_argument("nelder_mead needs dimension >= 1");

  std::vector<std::vector<double>> verts(d + 1, init);
  for (std::size_t i = 0; i < d; ++i) verts[i + 1][i] += step;
  std::vector<double> fv(d + 1);
  for (std::size_t i = 0; i <= d; ++i) fv[i] = f(verts[i]);

  std::vector<std::size_t> order(d + 1);
  NelderMeadResult result;
  std::vector<double> centroid(d), reflected(d), trial(d);
  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    for (std::size_t i = 0; i <= d; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = order[0];
    const std::size_t worst = order[d];
    const std::size_t second_worst = order[d - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        diameter =
            std::max(diameter, std::abs(verts[i][j] - verts[best][j]));
    result.iterations = iter;
    if (diameter < tol) {
      result.converged = true;
      break;
    }

    for (std::size_t j = 0; j < d; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i <= d; ++i)
        if (i != worst) s += verts[i][j];
      centroid[j] = s / static_cast<double>(d);
    }

    for (std::size_t j = 0; j < d; ++j)
      reflected[j] = centroid[j] + (centroid[j] - verts[worst][j]);
    const double fr = f(reflected);
    if (fr < fv[best]) {
      for (std::size_t j = 0; j < d; ++j)
        trial[j] = centroid[j] + 2.0 * (centroid[j] - verts[worst][j]);
      const double fe = f(trial);
      if (fe < fr) {
        verts[worst] = trial;
        fv[worst] = fe;
      } else {
        verts[worst] = reflected;
        fv[worst] = fr;
      }
    } else if (fr < fv[second_worst]) {
      verts[worst] = reflected;
      fv[worst] = fr;
    } else {
      const bool outside = fr < fv[worst];
      const std::vector<double>& toward = outside ? reflected : verts[worst];
      for (std::size_t j = 0; j < d; ++j)
        trial[j] = centroid[j] + 0.5 * (toward[j] - centroid[j]);
      const double fc = f(trial);
      if (fc < (outside ? fr : fv[worst])) {
        verts[worst] = trial;
        fv[worst] = fc;
      } else {
        // Shrink everything toward the best vertex.
        for (std::size_t i = 0; i <= d; ++i) {
          if (i == best) continue;
          for (std::size_t j = 0; j < d; ++j)
            verts[i][j] =
                verts[best][j] + 0.5 * (verts[i][j] - verts[best][j]);
          fv[i] = f(verts[i]);
        }
      }
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= d; ++i)
    if (fv[i] < fv[best]) best = i;
  result.x = verts[best];
  result.fmin = fv[best];
  return result;
}

MleResult fit_mle(const PointPattern& pattern, SeqModel model,
                  const QuadratureScheme& quad,
                  const std::vector<double>& init, bool fix_theta) {
  if (pattern.points.size() < 2)
    throw std::invalid_argument(
        "MLE needs at least 2 points; the likelihood of a single point does "
        "not depend on the parameters");
  const std::size_t d_full = model == SeqModel::softcore ? 2 : 3;
  if (init.size() != d_full)
    throw std::invalid_argument("init has wrong dimension for the model");
  if (!(init[0] > 0.0) || !(init[1] > 0.0 && init[1] < 1.0))
    throw std::invalid_argument("init outside parameter bounds");
  const bool has_theta = model == SeqModel::mixture;
  if (has_theta && !(init[2] >= 0.0 && init[2] <= 1.0))
    throw std::invalid_argument("init theta outside [0,1]");

  SequentialLoglik eval(pattern, quad);
  const double fixed_theta = has_theta ? init[2] : 0.0;
  const bool optimize_theta = has_theta && !fix_theta;
  if (optimize_theta && !(init[2] > 0.0 && init[2] < 1.0))
    throw std::invalid_argument("free theta init must lie strictly in (0,1)");

  const auto unpack = [&](const std::vector<double>& t) {
    MixtureParams p;
    p.softcore.R = std::exp(t[0]);
    p.softcore.kappa = clamped_sigmoid(t[1]);
    p.theta = optimize_theta ? sigmoid(t[2]) : fixed_theta;
    return p;
  };
  const auto objective = [&](const std::vector<double>& t) {
    const double ll = eval.mixture_loglik(unpack(t));
    return std::isnan(ll) ? std::numeric_limits<double>::infinity() : -ll;
  };

  std::vector<double> t0{std::log(init[0]),
                         logit(std::clamp(init[1], kKappaEps, 1.0 - kKappaEps))};
  if (optimize_theta) t0.push_back(logit(init[2]));
  if (!std::isfinite(objective(t0)))
    throw std::invalid_argument("likelihood not finite at init");

  const NelderMeadResult nm = nelder_mead(objective, t0, 0.5, 1e-6, 2000);
  const MixtureParams best = unpack(nm.x);

  MleResult result;
  result.params = {best.softcore.R, best.softcore.kappa};
  if (has_theta) result.params.push_back(best.theta);
  result.loglik = -nm.fmin;
  result.iterations = nm.iterations;
  result.converged = nm.converged;
  return result;
}

Chain fit_bayes_mixture(const PointPattern& pattern,
                        const QuadratureScheme& quad, const Prior& prior,
                        std::size_t iterations, std::size_t burn_in,
                        Rng& rng) {
  if (prior.dim() != 3)
    throw std::invalid_argument(
        "mixture fit needs a 3-component prior (R, kappa, theta)");
  if (burn_in >= iterations)
    throw std::invalid_argument("burn_in must be smaller than iterations");

  SequentialLoglik eval(pattern, quad);
  const auto log_post = [&](const std::vector<double>& v) {
    const double lp = prior.log_density(v);
    if (lp == -std::numeric_limits<double>::infinity()) return lp;
    if (!(v[0] > 0.0) || !(v[1] > kKappaEps && v[1] < 1.0 - kKappaEps) ||
        !(v[2] >= 0.0 && v[2] <= 1.0))
      return -std::numeric_limits<double>::infinity();
    return eval.mixture_loglik({{v[0], v[1]}, v[2]}) + lp;
  };

  // Median-ish start inside every support.
  std::vector<double> init(3);
  for (std::size_t i = 0; i < 3; ++i) {
    const PriorComponent& c = prior.components[i];
    init[i] = c.proper() ? c.quantile(0.5) : c.a() + 30.0;
  }
  init[1] = std::clamp(init[1], 0.05, 0.95);

  Chain chain = ram_mcmc(log_post, prior, init, iterations, 0.234, rng);
  chain.draws.erase(chain.draws.begin(),
                    chain.draws.begin() + static_cast<std::ptrdiff_t>(burn_in));
  chain.log_post.erase(
      chain.log_post.begin(),
      chain.log_post.begin() + static_cast<std::ptrdiff_t>(burn_in));
  chain.accepted.erase(
      chain.accepted.begin(),
      chain.accepted.begin() + static_cast<std::ptrdiff_t>(burn_in));
  return chain;
}

}  // namespace sweatpp
