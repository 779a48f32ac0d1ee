// Release gate: every criterion below must print PASS for the build to be
// accepted. A criterion passes only when its checks hold and it finishes
// inside its runtime budget. Run with no arguments for the full suite, or
// pass name substrings to run a subset while debugging.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "support/stat_tests.hpp"
#include "sweatpp/abc.hpp"
#include "sweatpp/changepoint.hpp"
#include "sweatpp/envelopes.hpp"
#include "sweatpp/fit.hpp"
#include "sweatpp/generative.hpp"
#include "sweatpp/geometry.hpp"
#include "sweatpp/priors.hpp"
#include "sweatpp/quadrature.hpp"
#include "sweatpp/ram.hpp"
#include "sweatpp/rng.hpp"
#include "sweatpp/sequential.hpp"
#include "sweatpp/summaries.hpp"

using namespace sweatpp;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string strf(const char* fmt, ...) {
  char buf[1024];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

Window full_window() { return {2592.0, 1944.0}; }

PointPattern uniform_pattern(const Window& w, std::size_t n, Rng& rng) {
  PointPattern p;
  p.window = w;
  p.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    p.points.push_back({rng.uniform() * w.width, rng.uniform() * w.height});
  return p;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

// ---------------------------------------------------------------------------
// 1. A one-point pattern has likelihood 1/|W| regardless of the parameters.

Outcome run_single_point_loglik() {
  const Window w = full_window();
  PointPattern p;
  p.window = w;
  p.points = {{1000.25, 700.5}};
  const QuadratureScheme quad = make_regular_quadrature(w, 10800);
  const double expect = -std::log(2592.0 * 1944.0);
  bool ok = expect == -std::log(w.area());
  double worst = 0.0;
  const std::vector<SoftcoreParams> configs{
      {70.0, 0.4}, {25.0, 0.15}, {110.0, 0.85}};
  for (const SoftcoreParams& sc : configs) {
    const double got = seq_loglik(p, sc, quad);
    worst = std::max(worst, std::abs(got - expect));
    ok = ok && got == expect;
  }
  return {ok, strf("loglik -log(2592*1944) = %.12f, max deviation %.3g",
                   expect, worst)};
}

// ---------------------------------------------------------------------------
// 2. The incremental normalizer series must agree with a from-scratch
// quadrature recomputation per prefix, done in long double with direct
// distance ratios instead of the log-distance tables.

Outcome run_normalizer_oracle() {
  const Window w = full_window();
  const QuadratureScheme quad = make_regular_quadrature(w, 10800);
  if (quad.size() != 10800)
    return {false, strf("quadrature has %zu nodes, wanted 10800", quad.size())};
  const std::size_t J = quad.size();
  const Rng base(20201);
  long double worst = 0.0L;
  std::size_t entries = 0;
  for (int rep = 0; rep < 50; ++rep) {
    Rng rng = base.split(static_cast<std::uint64_t>(rep));
    const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 99.0);
    const SoftcoreParams sc{30.0 + 80.0 * rng.uniform(),
                            0.1 + 0.8 * rng.uniform()};
    const PointPattern pat = uniform_pattern(w, n, rng);
    const std::vector<double> got = log_normalizer_series(pat, sc, quad);
    if (got.size() != n - 1)
      return {false, strf("series length %zu for n=%zu", got.size(), n)};

    // Node-major table of (R/d)^(2/kappa), then fresh prefix sums per k.
    std::vector<long double> term(J * (n - 1));
    const long double expo = 2.0L / static_cast<long double>(sc.kappa);
    for (std::size_t j = 0; j < J; ++j)
      for (std::size_t i = 0; i + 1 < n; ++i) {
        const long double d = sqrtl(static_cast<long double>(
            squared_distance(quad.nodes[j], pat.points[i])));
        term[j * (n - 1) + i] = powl(static_cast<long double>(sc.R) / d, expo);
      }
    std::vector<long double> s(J);
    for (std::size_t k = 1; k < n; ++k) {
      long double m = kInf;
      for (std::size_t j = 0; j < J; ++j) {
        long double acc = 0.0L;
        const long double* row = term.data() + j * (n - 1);
        for (std::size_t i = 0; i < k; ++i) acc += row[i];
        s[j] = acc;
        if (acc < m) m = acc;
      }
      long double z = 0.0L;
      for (std::size_t j = 0; j < J; ++j)
        z += static_cast<long double>(quad.weights[j]) * expl(m - s[j]);
      const long double oracle = m - logl(z);
      const long double dev =
          fabsl(oracle - static_cast<long double>(got[k - 1]));
      if (dev > worst) worst = dev;
      ++entries;
    }
  }
  const bool ok = worst <= 1e-10L;
  return {ok, strf("50 patterns, %zu series entries, max |deviation| %.3Lg "
                   "(tolerance 1e-10)",
                   entries, worst)};
}

// ---------------------------------------------------------------------------
// 3. The mixture likelihood must collapse to the plain sequential likelihood
// at theta=0 and to the uniform-noise likelihood -n log|W| at theta=1.

Outcome run_mixture_endpoints() {
  const Window w = full_window();
  const QuadratureScheme quad = make_regular_quadrature(w, 1200);
  const Rng base(303);
  std::size_t checked = 0;
  for (int rep = 0; rep < 100; ++rep) {
    Rng rng = base.split(static_cast<std::uint64_t>(rep));
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 80.0);
    const SoftcoreParams sc{30.0 + 70.0 * rng.uniform(),
                            0.15 + 0.7 * rng.uniform()};
    const PointPattern pat = uniform_pattern(w, n, rng);
    const SequentialLoglik ll(pat, quad);
    const double plain = ll.softcore_loglik(sc);
    const double at0 = ll.mixture_loglik({sc, 0.0});
    const double at1 = ll.mixture_loglik({sc, 1.0});
    const double noise = -static_cast<double>(n) * std::log(w.area());
    if (at0 != plain)
      return {false, strf("theta=0 mismatch at rep %d: %.17g vs %.17g", rep,
                          at0, plain)};
    if (at1 != noise)
      return {false, strf("theta=1 mismatch at rep %d: %.17g vs %.17g", rep,
                          at1, noise)};
    ++checked;
  }
  return {true, strf("%zu patterns, both endpoint reductions exact", checked)};
}

// ---------------------------------------------------------------------------
// 4. Maximum likelihood on simulated arrival patterns recovers the
// inhibition range, and the free mixture fit leaves noise-free data with a
// near-zero noise weight.

Outcome run_mle_recovery() {
  const Window w = full_window();
  const QuadratureScheme quad = make_regular_quadrature(w, 10800);
  const SoftcoreParams truth{70.0, 0.4};
  std::vector<double> r_hats;
  int near_zero_theta = 0;
  for (int rep = 0; rep < 20; ++rep) {
    Rng rng(4000 + static_cast<std::uint64_t>(rep));
    const PointPattern pat = simulate_sequential(200, truth, w, rng);
    const MleResult sc = fit_mle(pat, SeqModel::softcore, quad, {50.0, 0.5});
    r_hats.push_back(sc.params[0]);
    const MleResult mix =
        fit_mle(pat, SeqModel::mixture, quad, {50.0, 0.5, 0.05});
    if (mix.params[2] < 0.1) ++near_zero_theta;
  }
  const double med = stat_tests::median_of(r_hats);
  const bool ok = med >= 59.5 && med <= 80.5 && near_zero_theta >= 16;
  return {ok, strf("median R %.2f (target [59.5, 80.5]), theta < 0.1 in "
                   "%d/20 fits (need >= 16)",
                   med, near_zero_theta)};
}

// ---------------------------------------------------------------------------
// 5. The adaptive Metropolis sampler on a known 3-d Gaussian target must hit
// its acceptance-rate window and reproduce the target mean.

Outcome run_ram_calibration() {
  const std::vector<double> mu{0.5, -0.3, 1.2};
  const std::vector<double> sd{1.0, 0.5, 2.0};
  const auto log_post = [&](const std::vector<double>& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      const double z = (x[i] - mu[i]) / sd[i];
      s -= 0.5 * z * z;
    }
    return s;
  };
  const Prior prior{{"a", "b", "c"},
                    {PriorComponent::uniform(-40.0, 40.0),
                     PriorComponent::uniform(-40.0, 40.0),
                     PriorComponent::uniform(-40.0, 40.0)}};
  Rng rng(505);
  const Chain chain =
      ram_mcmc(log_post, prior, {0.0, 0.0, 0.0}, 100000, 0.234, rng);
  const double acc = chain.acceptance_rate();
  bool ok = acc >= 0.184 && acc <= 0.284;
  std::string detail = strf("acceptance %.3f (target [0.184, 0.284])", acc);
  const std::size_t burn = 10000;
  for (std::size_t dim = 0; dim < 3; ++dim) {
    std::vector<double> col;
    col.reserve(chain.draws.size() - burn);
    for (std::size_t i = burn; i < chain.draws.size(); ++i)
      col.push_back(chain.draws[i][dim]);
    const double mean = stat_tests::mean_of(col);
    const double se = stat_tests::batch_means_se(col);
    ok = ok && std::abs(mean - mu[dim]) <= 3.0 * se;
    detail += strf(", dim %zu: mean %.3f vs %.1f (se %.4f)", dim, mean,
                   mu[dim]);
  }
  return {ok, detail};
}

// ---------------------------------------------------------------------------
// 6. Rejection sampling with an infinite tolerance accepts everything, so
// the kept draws must reproduce the prior itself for every proper family.

Outcome run_abc_prior_identity() {
  const Prior prior{{"R", "sigma", "p"},
                    {PriorComponent::uniform(40.0, 100.0),
                     PriorComponent::gamma(10.0 / 3.0, 3.0),
                     PriorComponent::uniform(0.1, 1.0)}};
  const AbcSimulator none = [](const std::vector<double>&, Rng&) {
    return std::optional<SummaryVector>{};
  };
  const Rng rng(606);
  const AbcSample s =
      abc_rejection_with({60.0, 70.0, 40.0}, prior, none, kInf, 10000, rng);
  if (s.draws.size() != 10000 || s.simulations != 10000)
    return {false, strf("kept %zu draws from %zu simulations", s.draws.size(),
                        s.simulations)};
  std::vector<std::vector<double>> cols(3);
  for (const std::vector<double>& d : s.draws)
    for (std::size_t j = 0; j < 3; ++j) cols[j].push_back(d[j]);
  const auto uniform_cdf = [](double a, double b) {
    return [a, b](double x) {
      return std::min(1.0, std::max(0.0, (x - a) / (b - a)));
    };
  };
  const double p_r = stat_tests::ks_pvalue(cols[0], uniform_cdf(40.0, 100.0));
  const double p_sigma = stat_tests::ks_pvalue(cols[1], [](double x) {
    return stat_tests::gamma_cdf(x, 10.0 / 3.0, 3.0);
  });
  const double p_p = stat_tests::ks_pvalue(cols[2], uniform_cdf(0.1, 1.0));
  const bool ok = p_r > 0.01 && p_sigma > 0.01 && p_p > 0.01;
  return {ok, strf("KS p-values: uniform R %.3f, gamma sigma %.3f, uniform "
                   "p %.3f (all must exceed 0.01)",
                   p_r, p_sigma, p_p)};
}

// ---------------------------------------------------------------------------
// 7. The ABC chain run on summaries of one generative simulation must place
// its posterior medians near the generating parameters.

Outcome run_abc_mcmc_recovery() {
  const Window w = full_window();
  Rng obs_rng(11);
  const PointPattern obs_pat =
      simulate_generative({80.0, 3.0, 0.6}, w, obs_rng);
  const std::optional<SummaryVector> obs = abc_summaries(obs_pat);
  if (!obs)
    return {false, strf("observed pattern (n=%zu) has undefined summaries",
                        obs_pat.size())};
  Rng rng(707);
  const AbcSample s =
      abc_mcmc(*obs, generative_default_prior(), w, 200000, 5000, rng);
  std::vector<double> r_col, p_col;
  r_col.reserve(s.draws.size());
  p_col.reserve(s.draws.size());
  for (const std::vector<double>& d : s.draws) {
    r_col.push_back(d[0]);
    p_col.push_back(d[2]);
  }
  const double med_r = stat_tests::median_of(r_col);
  const double med_p = stat_tests::median_of(p_col);
  const bool ok = std::abs(med_r - 80.0) <= 15.0 && med_r >= 60.0 &&
                  med_r <= 100.0 && std::abs(med_p - 0.6) <= 0.15;
  return {ok, strf("observed n=%zu, kept %zu, median R %.1f (target 80 +- "
                   "15, range [60, 100]), median p %.2f (target 0.60 +- "
                   "0.15), tolerance %.3f",
                   obs_pat.size(), s.draws.size(), med_r, med_p,
                   s.tolerance)};
}

// ---------------------------------------------------------------------------
// 8. Sequential inhibition output must respect the hard-core distance in
// every single run.

Outcome run_ssi_exclusion() {
  const Window w{700.0, 500.0};
  double worst = kInf;
  std::size_t total_points = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    Rng rng(8000 + static_cast<std::uint64_t>(rep));
    const PointPattern pat = simulate_ssi(50.0, w, 200, rng);
    total_points += pat.size();
    if (pat.size() < 2)
      return {false, strf("run %d produced only %zu points", rep, pat.size())};
    const double d = pairwise_min_distance(pat.points);
    if (d < worst) worst = d;
    if (d < 50.0)
      return {false,
              strf("run %d has pairwise distance %.6f below 50", rep, d)};
  }
  return {true, strf("1000 runs, smallest pairwise distance %.3f (>= 50 "
                     "required), mean points per run %.1f",
                     worst, static_cast<double>(total_points) / 1000.0)};
}

// ---------------------------------------------------------------------------
// 9. Independent thinning of a fixed 200-point pattern must produce
// binomial(200, p) retention counts.

Outcome run_thinning_binomial() {
  const Window w{600.0, 450.0};
  Rng parent_rng(909);
  const PointPattern parent = uniform_pattern(w, 200, parent_rng);
  const double p = 0.35;
  std::vector<double> counts(201, 0.0);
  const Rng base(910);
  for (int rep = 0; rep < 1000; ++rep) {
    Rng rng = base.split(static_cast<std::uint64_t>(rep));
    counts[thin(parent, p, rng).size()] += 1.0;
  }
  std::vector<double> probs(201);
  for (std::size_t k = 0; k <= 200; ++k)
    probs[k] = std::exp(stat_tests::log_binomial_pmf(k, 200, p));
  const double pval = stat_tests::chi_square_gof_pvalue(counts, probs);
  const bool ok = pval > 0.01;
  return {ok, strf("1000 thinnings, chi-square p-value %.3f against "
                   "binomial(200, 0.35) (must exceed 0.01)",
                   pval)};
}

// ---------------------------------------------------------------------------
// 10. The pair correlation estimator must be unbiased for complete spatial
// randomness: its average over replicates sits at 1.

Outcome run_pcf_flatness() {
  const Window w = full_window();
  std::vector<double> grid(26);
  for (std::size_t i = 0; i < grid.size(); ++i)
    grid[i] = 50.0 + 10.0 * static_cast<double>(i);
  const Rng base(1010);
  double sum = 0.0;
  std::size_t count = 0;
  for (int rep = 0; rep < 200; ++rep) {
    Rng rng = base.split(static_cast<std::uint64_t>(rep));
    const PointPattern pat = uniform_pattern(w, 400, rng);
    const FunctionEstimate g = estimate_pcf(pat, grid);
    for (const double v : g.value) {
      sum += v;
      ++count;
    }
  }
  const double mean = sum / static_cast<double>(count);
  const bool ok = mean >= 0.95 && mean <= 1.05;
  return {ok, strf("mean pcf %.4f over 200 replicates x %zu grid points on "
                   "[50, 300] px (target [0.95, 1.05])",
                   mean, grid.size())};
}

// ---------------------------------------------------------------------------
// 11. The 95% global rank envelope must reject the truth at close to its
// nominal rate when observed and simulated patterns share the model.

Outcome run_envelope_null() {
  const Window w{500.0, 400.0};
  const SoftcoreParams sc{20.0, 0.5};
  const std::vector<double> grid = default_r_grid(w);
  const Rng base(1111);
  int rejections = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const Rng rep_rng = base.split(static_cast<std::uint64_t>(rep));
    Rng obs_rng = rep_rng.split(0);
    const PointPattern obs = simulate_sequential(40, sc, w, obs_rng);
    const FunctionEstimate obs_g = estimate_pcf(obs, grid);
    std::vector<FunctionEstimate> sims;
    sims.reserve(499);
    for (int s = 0; s < 499; ++s) {
      Rng sim_rng = rep_rng.split(static_cast<std::uint64_t>(s) + 1);
      sims.push_back(
          estimate_pcf(simulate_sequential(40, sc, w, sim_rng), grid));
    }
    if (global_rank_envelope(obs_g, sims, 0.95).reject) ++rejections;
  }
  const double rate = static_cast<double>(rejections) / 200.0;
  const bool ok = rate >= 0.01 && rate <= 0.11;
  return {ok, strf("rejected %d/200 null repetitions, rate %.3f (target "
                   "[0.01, 0.11])",
                   rejections, rate)};
}

// ---------------------------------------------------------------------------
// 12. The split-point search must match an exhaustive brute-force scan, and
// the documented worked example must come out exactly.

double seg_mean(const std::vector<double>& v, std::size_t b, std::size_t e) {
  double m = 0.0;
  for (std::size_t i = b; i < e; ++i) m += v[i];
  return m / static_cast<double>(e - b);
}

double pop_var(const std::vector<double>& v, std::size_t b, std::size_t e) {
  const double m = seg_mean(v, b, e);
  double s = 0.0;
  for (std::size_t i = b; i < e; ++i) s += (v[i] - m) * (v[i] - m);
  return s / static_cast<double>(e - b);
}

std::vector<double> split_objective(const std::vector<double>& x) {
  std::vector<double> padded{1.0, 1.0, 1.0};
  padded.insert(padded.end(), x.begin(), x.end());
  std::vector<double> f(x.size());
  for (std::size_t t = 1; t + 1 <= x.size(); ++t)
    f[t] = pop_var(padded, 0, t + 3) + pop_var(padded, t + 3, padded.size());
  return f;
}

Outcome run_changepoint_brute_force() {
  const ChangePointResult example = pixel_change_point({1, 1, 1, 5, 5, 5});
  if (example.t_star != 3 || example.mean_diff != 4.0)
    return {false, strf("worked example gave t=%d, mean_diff=%.6f instead "
                        "of t=3, mean_diff=4",
                        example.t_star, example.mean_diff)};

  const Rng base(1212);
  for (int rep = 0; rep < 10000; ++rep) {
    Rng rng = base.split(static_cast<std::uint64_t>(rep));
    const std::size_t T = 2 + static_cast<std::size_t>(rep * 7 % 119);
    const int kind = rep % 4;
    const std::size_t jump =
        1 + static_cast<std::size_t>(rng.uniform() * static_cast<double>(T));
    std::vector<double> x(T);
    for (std::size_t i = 0; i < T; ++i) {
      switch (kind) {
        case 0:
          x[i] = rng.uniform(0.0, 2.0);
          break;
        case 1:
          x[i] = (i < jump ? 1.0 : 0.3) + 0.05 * rng.normal();
          break;
        case 2:
          x[i] = std::floor(rng.uniform(0.0, 4.0));
          break;
        default:
          x[i] = (i == jump % T) ? 5.0 : 1.0;
      }
    }
    const ChangePointResult cp = pixel_change_point(x);
    const std::vector<double> f = split_objective(x);
    if (cp.t_star < 1 || cp.t_star >= static_cast<int>(T))
      return {false, strf("rep %d: split index %d outside 1..%zu", rep,
                          cp.t_star, T - 1)};
    double f_min = kInf;
    int arg_min = 0;
    for (std::size_t t = 1; t + 1 <= T; ++t)
      if (f[t] < f_min) {
        f_min = f[t];
        arg_min = static_cast<int>(t);
      }
    const double f_at_impl = f[static_cast<std::size_t>(cp.t_star)];
    if (f_at_impl > f_min + 1e-9 || std::abs(cp.f_min - f_at_impl) > 1e-9)
      return {false, strf("rep %d: objective %.12g at t=%d vs brute-force "
                          "minimum %.12g at t=%d",
                          rep, cp.f_min, cp.t_star, f_min, arg_min)};
    bool unique = true;
    for (std::size_t t = 1; t + 1 <= T; ++t)
      if (static_cast<int>(t) != arg_min && f[t] < f_min + 1e-6) unique = false;
    if (unique && cp.t_star != arg_min)
      return {false, strf("rep %d: split %d but unique brute-force minimum "
                          "is at %d",
                          rep, cp.t_star, arg_min)};
    std::vector<double> padded{1.0, 1.0, 1.0};
    padded.insert(padded.end(), x.begin(), x.end());
    const std::size_t split = static_cast<std::size_t>(cp.t_star) + 3;
    const double md = seg_mean(padded, split, padded.size()) -
                      seg_mean(padded, 0, split);
    if (std::abs(cp.mean_diff - md) > 1e-9 * (1.0 + std::abs(md)))
      return {false, strf("rep %d: mean_diff %.12g vs recomputed %.12g", rep,
                          cp.mean_diff, md)};
  }
  return {true, "worked example exact, 10000 random series match the "
                "exhaustive scan"};
}

// ---------------------------------------------------------------------------
// 13. End-to-end extraction: a synthetic recording of 25 growing dark disks
// on a perturbed grid must come back as exactly 25 points, in order of
// appearance, each within 2 px of where its disk was planted.

Outcome run_stack_extraction() {
  const std::size_t W = 640, H = 520, T = 60;
  const float bright = 200.0f / 255.0f;
  const float dark = 50.0f / 255.0f;
  Rng rng(1313);
  struct Source {
    double cx, cy;
    std::size_t frame;
  };
  std::vector<Source> sources;
  for (std::size_t j = 0; j < 5; ++j)
    for (std::size_t i = 0; i < 5; ++i) {
      const double cx =
          64.0 + 128.0 * static_cast<double>(i) + rng.uniform(-10.0, 10.0);
      const double cy =
          52.0 + 104.0 * static_cast<double>(j) + rng.uniform(-10.0, 10.0);
      sources.push_back({cx, cy, 2 + 2 * (j * 5 + i)});
    }

  FrameStack stack;
  stack.frames = T;
  stack.height = H;
  stack.width = W;
  stack.data.assign(T * H * W, bright);
  for (std::size_t t = 0; t < T; ++t)
    for (const Source& s : sources) {
      if (t < s.frame) continue;
      const double rad = 3.5 + 0.17 * static_cast<double>(t - s.frame);
      const std::size_t r_lo =
          static_cast<std::size_t>(std::max(0.0, s.cy - rad - 1.0));
      const std::size_t r_hi = std::min(
          H, static_cast<std::size_t>(std::max(0.0, s.cy + rad + 2.0)));
      const std::size_t c_lo =
          static_cast<std::size_t>(std::max(0.0, s.cx - rad - 1.0));
      const std::size_t c_hi = std::min(
          W, static_cast<std::size_t>(std::max(0.0, s.cx + rad + 2.0)));
      for (std::size_t r = r_lo; r < r_hi; ++r)
        for (std::size_t c = c_lo; c < c_hi; ++c) {
          const double dx = static_cast<double>(c) + 0.5 - s.cx;
          const double dy = static_cast<double>(r) + 0.5 - s.cy;
          if (dx * dx + dy * dy <= rad * rad) stack.at(t, r, c) = dark;
        }
    }

  Image first;
  first.height = H;
  first.width = W;
  first.pixels.assign(stack.data.begin(),
                      stack.data.begin() + static_cast<std::ptrdiff_t>(H * W));
  const Image lighting = background_correct(first, 25.0);
  const WetSequence wet = binarize_stack(stack, lighting, 0.35);
  const PointPattern points = extract_spots(wet, 15.0, 20);

  if (points.size() != sources.size())
    return {false, strf("extracted %zu points from %zu planted disks",
                        points.size(), sources.size())};
  if (points.window.width != static_cast<double>(W) ||
      points.window.height != static_cast<double>(H))
    return {false, strf("window came back as %.0f x %.0f",
                        points.window.width, points.window.height)};
  double worst = 0.0;
  for (std::size_t k = 0; k < sources.size(); ++k) {
    const double d =
        distance(points.points[k], {sources[k].cx, sources[k].cy});
    if (d > worst) worst = d;
    if (d > 2.0)
      return {false, strf("point %zu is %.2f px from its source (appearance "
                          "order mismatch or drift)",
                          k, d)};
  }
  return {true, strf("25 disks extracted in appearance order, max centroid "
                     "error %.3f px (tolerance 2)",
                     worst)};
}

// ---------------------------------------------------------------------------

struct Criterion {
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {"single-point-loglik-closed-form", 1.0, run_single_point_loglik},
      {"normalizer-vs-naive-oracle", 120.0, run_normalizer_oracle},
      {"mixture-endpoint-reductions", 60.0, run_mixture_endpoints},
      {"softcore-mle-recovery", 1200.0, run_mle_recovery},
      {"ram-gaussian-calibration", 120.0, run_ram_calibration},
      {"abc-prior-identity", 60.0, run_abc_prior_identity},
      {"abc-mcmc-recovery", 3600.0, run_abc_mcmc_recovery},
      {"ssi-hard-core-exclusion", 120.0, run_ssi_exclusion},
      {"thinning-binomial-counts", 60.0, run_thinning_binomial},
      {"poisson-pcf-flatness", 120.0, run_pcf_flatness},
      {"envelope-null-coverage", 1800.0, run_envelope_null},
      {"changepoint-brute-force", 60.0, run_changepoint_brute_force},
      {"stack-extraction-synthetic", 120.0, run_stack_extraction},
  };

  std::size_t ran = 0;
  std::size_t failures = 0;
  for (const Criterion& c : criteria) {
    if (argc > 1) {
      bool wanted = false;
      for (int i = 1; i < argc; ++i)
        if (std::strstr(c.name, argv[i]) != nullptr) wanted = true;
      if (!wanted) continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    const bool in_budget = secs < c.budget_s;
    const bool pass = out.pass && in_budget;
    std::printf("%s %s (%.1f s, budget %.0f s) %s%s\n",
                pass ? "PASS" : "FAIL", c.name, secs, c.budget_s,
                out.detail.c_str(), in_budget ? "" : " [over budget]");
    std::fflush(stdout);
    ++ran;
    if (!pass) ++failures;
  }
  if (ran == 0) {
    std::printf("no criterion matches the given filter\n");
    return 2;
  }
  std::printf("%zu/%zu criteria passed\n", ran - failures, ran);
  return failures == 0 ? 0 : 1;
}
