#include "sweatpp/envelopes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "sweatpp/generative.hpp"
#include "sweatpp/sequential.hpp"

namespace sweatpp {

namespace {

// Lexicographic comparison of the full extremeness key: the ascending-sorted
// pointwise-rank vector first, raw curve values as the tie-break so that the
// ordering depends only on the curves themselves.
bool more_extreme(const std::vector<std::size_t>& ranks_a,
                  const std::vector<double>& values_a,
                  const std::vector<std::size_t>& ranks_b,
                  const std::vector<double>& values_b) {
  if (ranks_a != ranks_b) return ranks_a < ranks_b;
  return values_a < values_b;
}

}  // namespace

Envelope global_rank_envelope(const FunctionEstimate& observed,
                              const std::vector<FunctionEstimate>& simulated,
                              double level) {
  const std::size_t m = simulated.size();
  if (m < 99)
    throw std::invalid_argument(
        "global rank envelope needs at least 99 simulations, got " +
        std::to_string(m));
  if (!(level > 0.0 && level < 1.0))
    throw std::invalid_argument("level must lie in (0,1)");
  const std::size_t T = observed.r.size();
  if (T == 0) throw std::invalid_argument("observed curve is empty");
  for (const FunctionEstimate& s : simulated)
    if (s.r != observed.r)
      throw std::invalid_argument(
          "simulated curve grid does not match the observed grid");

  const std::size_t total = m + 1;  // observed last
  const auto curve_value = [&](std::size_t i, std::size_t t) {
    return i < m ? simulated[i].value[t] : observed.value[t];
  };

  // Pointwise two-sided ranks: number of curves strictly below or strictly
  // above, whichever is smaller; ties share the same rank.
  std::vector<std::vector<std::size_t>> ranks(
      total, std::vector<std::size_t>(T, 0));
  std::vector<std::pair<double, std::size_t>> column(total);
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t i = 0; i < total; ++i) column[i] = {curve_value(i, t), i};
    std::sort(column.begin(), column.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t pos = 0;
    while (pos < total) {
      std::size_t end = pos;
      while (end < total && column[end].first == column[pos].first) ++end;
      for (std::size_t k = pos; k < end; ++k)
        ranks[column[k].second][t] =
            std::min(pos, total - end);  // strictly below vs strictly above
      pos = end;
    }
  }
  for (auto& rv : ranks) std::sort(rv.begin(), rv.end());

  std::vector<std::vector<double>> raw(total, std::vector<double>(T));
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t t = 0; t < T; ++t) raw[i][t] = curve_value(i, t);

  // p-interval: strict and tied comparisons against the observed rank
  // vector, ties judged at the rank-vector level.
  std::size_t n_strict = 0;
  std::size_t n_tied = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (ranks[i] == ranks[m])
      ++n_tied;
    else if (ranks[i] < ranks[m])
      ++n_strict;
  }
  Envelope env;
  env.level = level;
  env.p_lo = static_cast<double>(1 + n_strict) / static_cast<double>(total);
  env.p_hi = static_cast<double>(1 + n_strict + n_tied) /
             static_cast<double>(total);
  env.reject = env.p_hi < 1.0 - level;

  // Most central simulated curves: sort sims by extremeness, drop the most
  // extreme ones, keep ceil(level*(m+1)) - 1.
  const std::size_t central_count = static_cast<std::size_t>(
      std::ceil(level * static_cast<double>(total))) - 1;
  if (central_count < 1 || central_count > m)
    throw std::invalid_argument("too few simulations for the requested level");
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return more_extreme(ranks[a], raw[a], ranks[b], raw[b]);
                   });

  env.r = observed.r;
  env.lo.assign(T, std::numeric_limits<double>::infinity());
  env.hi.assign(T, -std::numeric_limits<double>::infinity());
  env.central.assign(T, 0.0);
  for (std::size_t k = m - central_count; k < m; ++k) {
    const std::size_t i = order[k];
    for (std::size_t t = 0; t < T; ++t) {
      env.lo[t] = std::min(env.lo[t], raw[i][t]);
      env.hi[t] = std::max(env.hi[t], raw[i][t]);
    }
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t t = 0; t < T; ++t) env.central[t] += raw[i][t];
  for (std::size_t t = 0; t < T; ++t)
    env.central[t] /= static_cast<double>(m);
  return env;
}

Envelope posterior_predictive_envelope(
    const std::vector<std::vector<double>>& sample, PredModel model,
    const PointPattern& observed_pattern, StatKind statistic,
    std::size_t nsim, double level, Rng& rng, bool noise_free) {
  if (sample.empty())
    throw std::invalid_argument("posterior sample is empty");
  if (nsim < 99)
    throw std::invalid_argument(
        "posterior predictive envelope needs nsim >= 99");
  validate_pattern(observed_pattern);

  const Window& window = observed_pattern.window;
  const std::vector<double> grid = default_r_grid(window);
  const auto statistic_of = [&](const PointPattern& pat) {
    if (statistic == StatKind::pcf) return estimate_pcf(pat, grid);
    return estimate_F(pat, grid, default_f_lattice_spacing(window));
  };
  const FunctionEstimate observed = statistic_of(observed_pattern);

  const std::size_t n_obs = observed_pattern.points.size();
  std::vector<FunctionEstimate> sims;
  sims.reserve(nsim);
  for (std::size_t i = 0; i < nsim; ++i) {
    const std::size_t row = static_cast<std::size_t>(
        rng.uniform() * static_cast<double>(sample.size()));
    const std::vector<double>& params = sample[std::min(row, sample.size() - 1)];
    Rng stream = rng.split(i);
    try {
      PointPattern pat;
      switch (model) {
        case PredModel::softcore_seq:
          if (params.size() < 2)
            throw std::invalid_argument("softcore rows need (R, kappa)");
          pat = simulate_sequential(n_obs, {params[0], params[1]}, window,
                                    stream);
          break;
        case PredModel::mixture_seq: {
          if (params.size() < 3)
            throw std::invalid_argument(
                "mixture rows need (R, kappa, theta)");
          const double theta = noise_free ? 0.0 : params[2];
          pat = simulate_mixture(n_obs, {{params[0], params[1]}, theta},
                                 window, stream);
          break;
        }
        case PredModel::generative:
          if (params.size() < 3)
            throw std::invalid_argument(
                "generative rows need (R, sigma, p)");
          pat = simulate_generative({params[0], params[1], params[2]},
                                    window, stream);
          break;
      }
      sims.push_back(statistic_of(pat));
    } catch (const std::exception& e) {
      throw std::runtime_error("posterior predictive draw " +
                               std::to_string(i) + " failed: " + e.what());
    }
  }
  return global_rank_envelope(observed, sims, level);
}

}  // namespace sweatpp
