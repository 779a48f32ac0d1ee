#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sweatpp/generative.hpp"
#include "sweatpp/priors.hpp"
#include "sweatpp/rng.hpp"
#include "sweatpp/summaries.hpp"

namespace sweatpp {

struct AbcSample {
  std::vector<std::vector<double>> draws;  // kept x dim
  std::vector<double> distances;           // nondecreasing when quota-kept
  double tolerance = 0.0;                  // epsilon used, or largest kept
  std::size_t simulations = 0;             // simulator invocations
};

// Simulator: parameter vector -> summary triple, nullopt when the summaries
// are undefined (treated as infinite distance).
using AbcSimulator = std::function<std::optional<SummaryVector>(
    const std::vector<double>&, Rng&)>;

// Summaries of one generative-model simulation; the default simulator for
// both ABC algorithms. Parameters are (R, sigma, p).
std::optional<SummaryVector> simulate_generative_summaries(
    const std::vector<double>& params, const Window& window, Rng& rng);

double summary_distance(const SummaryVector& a, const SummaryVector& b);

// Plain rejection ABC: proposals from the prior, accepted when the summary
// distance is <= epsilon, until M draws are kept. Proposal k uses the child
// stream rng.split(k), so the schedule is reproducible and parallelizable.
// Throws when budget_per_keep proposals pass without an acceptance.
AbcSample abc_rejection(const SummaryVector& observed, const Prior& prior,
                        const Window& window, double epsilon, std::size_t M,
                        const Rng& rng,
                        std::uint64_t budget_per_keep = 1000000);
AbcSample abc_rejection_with(const SummaryVector& observed,
                             const Prior& prior, const AbcSimulator& simulate,
                             double epsilon, std::size_t M, const Rng& rng,
                             std::uint64_t budget_per_keep = 1000000);

// Adaptive ABC-MCMC: a RAM-adapted Metropolis chain whose acceptance test
// compares each proposal's summary distance against a running quantile
// (keep/iterations) of every distance seen so far. All simulated (parameter,
// distance) pairs are recorded; at the end the keep smallest-distance pairs
// are the sample, sorted by distance.
AbcSample abc_mcmc(const SummaryVector& observed, const Prior& prior,
                   const Window& window, std::size_t iterations,
                   std::size_t keep, Rng& rng);
AbcSample abc_mcmc_with(const SummaryVector& observed, const Prior& prior,
                        const AbcSimulator& simulate,
                        const std::vector<double>& init,
                        std::size_t iterations, std::size_t keep, Rng& rng);

}  // namespace sweatpp
