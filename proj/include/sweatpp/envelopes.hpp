#pragma once

#include <vector>

#include "sweatpp/quadrature.hpp"
#include "sweatpp/rng.hpp"
#include "sweatpp/summaries.hpp"

namespace sweatpp {

struct Envelope {
  std::vector<double> r;
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<double> central;  // pointwise mean of the simulated curves
  double p_lo = 0.0;
  double p_hi = 0.0;
  double level = 0.95;
  bool reject = false;
};

// Global rank envelope with extreme-rank-length ordering. Curves are ranked
// by their ascending-sorted vectors of pointwise two-sided ranks, compared
// lexicographically; the envelope bounds are the pointwise min/max of the
// ceil(level*(m+1))-1 most central simulated curves; the p-interval comes
// from the observed curve's position in the ordering, and reject means
// p_hi < 1 - level. Needs at least 99 simulated curves on the observed grid.
Envelope global_rank_envelope(const FunctionEstimate& observed,
                              const std::vector<FunctionEstimate>& simulated,
                              double level = 0.95);

enum class PredModel { softcore_seq, mixture_seq, generative };

// Draws nsim parameter rows from the fitted sample with replacement,
// simulates one pattern per draw (split substream per draw), computes the
// chosen statistic on the observed pattern's grid, and delegates to
// global_rank_envelope. Sequential models reuse the observed point count;
// the mixture model is simulated without its noise component when noise_free
// is set (the default).
Envelope posterior_predictive_envelope(
    const std::vector<std::vector<double>>& sample, PredModel model,
    const PointPattern& observed_pattern, StatKind statistic,
    std::size_t nsim, double level, Rng& rng, bool noise_free = true);

}  // namespace sweatpp
