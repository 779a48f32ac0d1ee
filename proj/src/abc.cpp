#include "sweatpp/abc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "sweatpp/ram.hpp"

namespace sweatpp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Exact running quantile: a max-heap of the m smallest distances and a
// min-heap of the rest; the threshold is the top of the lower heap.
class RunningQuantile {
 public:
  void push(double value) {
    if (lower_.empty() || value <= lower_.top())
      lower_.push(value);
    else
      upper_.push(value);
  }

  // Rebalances so the lower heap holds exactly m entries, then reports its
  // largest (the m-th smallest distance overall).
  double threshold(std::size_t m) {
    while (lower_.size() > m) {
      upper_.push(lower_.top());
      lower_.pop();
    }
    while (lower_.size() < m && !upper_.empty()) {
      lower_.push(upper_.top());
      upper_.pop();
    }
    return lower_.empty() ? kInf : lower_.top();
  }

 private:
  std::priority_queue<double> lower_;
  std::priority_queue<double, std::vector<double>, std::greater<double>>
      upper_;
};

}  // namespace

double summary_distance(const SummaryVector& a, const SummaryVector& b) {
  const double d1 = a.r1 - b.r1;
  const double d2 = a.r2 - b.r2;
  const double d3 = a.r3 - b.r3;
  return std::sqrt(d1 * d1 + d2 * d2 + d3 * d3);
}

std::optional<SummaryVector> simulate_generative_summaries(
    const std::vector<double>& params, const Window& window, Rng& rng) {
  if (params.size() != 3)
    throw std::invalid_argument("generative parameters are (R, sigma, p)");
  const PointPattern z =
      simulate_generative({params[0], params[1], params[2]}, window, rng);
  return abc_summaries(z);
}

AbcSample abc_rejection_with(const SummaryVector& observed,
                             const Prior& prior, const AbcSimulator& simulate,
                             double epsilon, std::size_t M, const Rng& rng,
                             std::uint64_t budget_per_keep) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (M < 1) throw std::invalid_argument("need at least one kept draw");
  if (!prior.proper())
    throw std::invalid_argument(
        "rejection ABC draws from the prior, which must be proper");

  AbcSample sample;
  sample.tolerance = epsilon;
  std::uint64_t proposal = 0;
  std::uint64_t since_last_accept = 0;
  while (sample.draws.size() < M) {
    if (since_last_accept >= budget_per_keep)
      throw std::runtime_error(
          "ABC rejection exhausted its proposal budget (" +
          std::to_string(budget_per_keep) + " without an acceptance)");
    Rng stream = rng.split(proposal++);
    const std::vector<double> theta = prior.sample(stream);
    const std::optional<SummaryVector> s = simulate(theta, stream);
    ++sample.simulations;
    ++since_last_accept;
    const double d = s ? summary_distance(*s, observed) : kInf;
    if (d <= epsilon) {
      sample.draws.push_back(theta);
      sample.distances.push_back(d);
      since_last_accept = 0;
    }
  }
  return sample;
}

AbcSample abc_rejection(const SummaryVector& observed, const Prior& prior,
                        const Window& window, double epsilon, std::size_t M,
                        const Rng& rng, std::uint64_t budget_per_keep) {
  return abc_rejection_with(
      observed, prior,
      [&window](const std::vector<double>& theta, Rng& stream) {
        return simulate_generative_summaries(theta, window, stream);
      },
      epsilon, M, rng, budget_per_keep);
}

AbcSample abc_mcmc_with(const SummaryVector& observed, const Prior& prior,
                        const AbcSimulator& simulate,
                        const std::vector<double>& init,
                        std::size_t iterations, std::size_t keep, Rng& rng) {
  const std::size_t d = prior.dim();
  if (d == 0) throw std::invalid_argument("abc_mcmc needs parameters");
  if (init.size() != d)
    throw std::invalid_argument("init has wrong dimension");
  if (keep < 1 || keep > iterations)
    throw std::invalid_argument("need 1 <= keep <= iterations");
  if (!prior.in_support(init))
    throw std::invalid_argument("init outside prior support");

  std::vector<double> s0(d);
  for (std::size_t i = 0; i < d; ++i)
    s0[i] = prior.components[i].initial_scale();
  RamAdapter adapter(std::move(s0), 0.234);

  struct Record {
    std::vector<double> params;
    double distance;
  };
  std::vector<Record> records;
  records.reserve(iterations);
  RunningQuantile quantile;

  std::vector<double> x = init;
  double x_log_prior = prior.log_density(x);
  std::vector<double> y(d);
  const double keep_frac =
      static_cast<double>(keep) / static_cast<double>(iterations);
  for (std::size_t n = 1; n <= iterations; ++n) {
    adapter.propose(x, rng, y);
    double alpha = 0.0;
    if (prior.in_support(y)) {
      const std::optional<SummaryVector> s = simulate(y, rng);
      const double dist = s ? summary_distance(*s, observed) : kInf;
      records.push_back({y, dist});
      quantile.push(dist);
      const std::size_t m = std::max<std::size_t>(
          1, static_cast<std::size_t>(
                 keep_frac * static_cast<double>(records.size())));
      const double eps = quantile.threshold(m);
      if (dist <= eps) {
        const double y_log_prior = prior.log_density(y);
        alpha = std::min(1.0, std::exp(y_log_prior - x_log_prior));
        if (rng.uniform() < alpha) {
          x = y;
          x_log_prior = y_log_prior;
        }
      }
    }
    adapter.adapt(alpha, n);
  }

  if (records.empty())
    throw std::runtime_error("abc_mcmc: no proposal ever landed in the "
                             "prior support");

  std::vector<std::size_t> order(records.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return records[a].distance < records[b].distance;
                   });
  const std::size_t kept = std::min(keep, records.size());
  if (records[order[0]].distance == kInf)
    throw std::runtime_error(
        "abc_mcmc: every simulation had undefined summaries");

  AbcSample sample;
  sample.simulations = records.size();
  sample.draws.reserve(kept);
  sample.distances.reserve(kept);
  for (std::size_t i = 0; i < kept; ++i) {
    sample.draws.push_back(std::move(records[order[i]].params));
    sample.distances.push_back(records[order[i]].distance);
  }
  sample.tolerance = sample.distances.back();
  return sample;
}

AbcSample abc_mcmc(const SummaryVector& observed, const Prior& prior,
                   const Window& window, std::size_t iterations,
                   std::size_t keep, Rng& rng) {
  // Start at a scale-appropriate interior value of each prior.
  std::vector<double> init(prior.dim());
  for (std::size_t i = 0; i < prior.dim(); ++i) {
    const PriorComponent& c = prior.components[i];
    switch (c.kind()) {
      case PriorComponent::Kind::improper_uniform:
        init[i] = c.a() + 30.0;
        break;
      case PriorComponent::Kind::uniform:
        init[i] = 0.5 * (c.a() + c.b());
        break;
      case PriorComponent::Kind::gamma:
        init[i] = c.a() * c.b();
        break;
    }
  }
  return abc_mcmc_with(
      observed, prior,
      [&window](const std::vector<double>& theta, Rng& stream) {
        return simulate_generative_summaries(theta, window, stream);
      },
      init, iterations, keep, rng);
}

}  // namespace sweatpp
