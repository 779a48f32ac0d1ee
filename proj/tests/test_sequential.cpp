#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "sweatpp/quadrature.hpp"
#include "sweatpp/rng.hpp"
#include "sweatpp/sequential.hpp"
#include "support/stat_tests.hpp"

using namespace sweatpp;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

PointPattern uniform_pattern(const Window& w, std::size_t n, Rng& rng) {
  PointPattern p;
  p.window = w;
  for (std::size_t i = 0; i < n; ++i)
    p.points.push_back({rng.uniform(0.0, w.width), rng.uniform(0.0, w.height)});
  return p;
}

// Fresh per-prefix normalizer computed with plain pow/exp arithmetic.
std::vector<double> naive_normalizer(const PointPattern& p,
                                     const SoftcoreParams& params,
                                     const QuadratureScheme& quad) {
  std::vector<double> out;
  for (std::size_t k = 1; k < p.size(); ++k) {
    std::vector<long double> s(quad.size(), 0.0L);
    for (std::size_t j = 0; j < quad.size(); ++j)
      for (std::size_t i = 0; i < k; ++i) {
        const double d = distance(quad.nodes[j], p.points[i]);
        s[j] += std::pow(params.R / d, 2.0 / params.kappa);
      }
    long double m = s[0];
    for (const long double v : s) m = std::min(m, v);
    long double acc = 0.0L;
    for (std::size_t j = 0; j < quad.size(); ++j)
      acc += static_cast<long double>(quad.weights[j]) * std::exp(m - s[j]);
    out.push_back(static_cast<double>(m - std::log(acc)));
  }
  return out;
}

}  // namespace

TEST_CASE("pairwise interaction exponent") {
  const SoftcoreParams params{70.0, 0.4};
  CHECK(softcore_log_potential({5.0, 5.0}, {}, params) == 0.0);

  const Point y{500.0, 400.0};
  const std::vector<Point> ring{{570.0, 400.0}, {430.0, 400.0},
                                {500.0, 470.0}, {500.0, 330.0}};
  CHECK(softcore_log_potential(y, ring, params) == doctest::Approx(-4.0));

  Rng rng(3);
  std::vector<Point> prefix;
  for (int i = 0; i < 50; ++i)
    prefix.push_back({rng.uniform(0.0, 800.0), rng.uniform(0.0, 600.0)});
  double direct = 0.0;
  for (const Point& x : prefix)
    direct -= std::pow(params.R / distance(y, x), 2.0 / params.kappa);
  CHECK(softcore_log_potential(y, prefix, params) ==
        doctest::Approx(direct).epsilon(1e-12));

  CHECK(softcore_log_potential(y, {y}, params) == -kInf);
}

TEST_CASE("normalizer series collapses to the window area as R vanishes") {
  Rng rng(21);
  const Window w{400.0, 300.0};
  const PointPattern p = uniform_pattern(w, 5, rng);
  const QuadratureScheme quad = make_regular_quadrature(w, 400);
  const auto series = log_normalizer_series(p, {1e-12, 0.5}, quad);
  REQUIRE(series.size() == 4);
  for (const double z : series)
    CHECK(z == doctest::Approx(-std::log(w.area())).epsilon(1e-6));
}

TEST_CASE("running-sum normalizer equals fresh per-prefix integrals") {
  Rng rng(8);
  const Window w{600.0, 450.0};
  const QuadratureScheme quad = make_regular_quadrature(w, 400);
  const PointPattern p = uniform_pattern(w, 50, rng);
  const SoftcoreParams params{40.0, 0.45};
  const auto fast = log_normalizer_series(p, params, quad);
  const auto slow = naive_normalizer(p, params, quad);
  REQUIRE(fast.size() == slow.size());
  for (std::size_t i = 0; i < fast.size(); ++i)
    CHECK(std::abs(fast[i] - slow[i]) < 1e-10);
}

TEST_CASE("near-hard-core normalizer carves out the exclusion disk") {
  const Window w{2592.0, 1944.0};
  PointPattern p;
  p.window = w;
  p.points = {{1296.0, 972.0}, {100.0, 100.0}};
  const double R = 300.0;
  const QuadratureScheme quad = make_regular_quadrature(w, 97200);
  const auto series = log_normalizer_series(p, {R, 0.02}, quad);
  const double integral = std::exp(-series[0]);
  const double expected = w.area() - 3.14159265358979323846 * R * R;
  CHECK(std::abs(integral - expected) / expected < 0.02);
}

TEST_CASE("single-point likelihood is the uniform density") {
  PointPattern p;
  p.window = {2592.0, 1944.0};
  p.points = {{700.0, 900.0}};
  const QuadratureScheme quad = make_regular_quadrature(p.window, 100);
  CHECK(seq_loglik(p, {70.0, 0.4}, quad) == -std::log(2592.0 * 1944.0));
}

TEST_CASE("two-point likelihood matches a refined quadrature transcription") {
  const Window w{2592.0, 1944.0};
  PointPattern p;
  p.window = w;
  p.points = {{1200.0, 900.0}, {1400.0, 900.0}};
  const SoftcoreParams params{70.0, 0.4};

  const QuadratureScheme fine = make_regular_quadrature(w, 1000000);
  double m = kInf;
  std::vector<double> s(fine.size());
  for (std::size_t j = 0; j < fine.size(); ++j) {
    s[j] = std::pow(params.R / distance(fine.nodes[j], p.points[0]),
                    2.0 / params.kappa);
    m = std::min(m, s[j]);
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < fine.size(); ++j)
    acc += fine.weights[j] * std::exp(m - s[j]);
  const double z2 = m - std::log(acc);
  const double pot = std::pow(params.R / 200.0, 2.0 / params.kappa);
  const double oracle = -std::log(w.area()) - pot + z2;

  const QuadratureScheme quad = make_regular_quadrature(w, 10800);
  CHECK(seq_loglik(p, params, quad) == doctest::Approx(oracle).epsilon(1e-4));
}

TEST_CASE("duplicate points sink the likelihood") {
  PointPattern p;
  p.window = {500.0, 500.0};
  p.points = {{100.0, 100.0}, {100.0, 100.0}, {300.0, 300.0}};
  const QuadratureScheme quad = make_regular_quadrature(p.window, 200);
  CHECK(seq_loglik(p, {50.0, 0.5}, quad) == -kInf);
  CHECK(mixture_loglik(p, {{50.0, 0.5}, 0.3}, quad) > -kInf);
}

TEST_CASE("mixture likelihood reduces exactly at the endpoints") {
  Rng rng(17);
  const Window w{800.0, 600.0};
  const QuadratureScheme quad = make_regular_quadrature(w, 400);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform(0.0, 40.0));
    const PointPattern p = uniform_pattern(w, n, rng);
    const SoftcoreParams params{rng.uniform(20.0, 90.0),
                                rng.uniform(0.2, 0.8)};
    const SequentialLoglik eval(p, quad);
    CHECK(eval.mixture_loglik({params, 0.0}) == eval.softcore_loglik(params));
    CHECK(eval.mixture_loglik({params, 1.0}) ==
          -static_cast<double>(n) * std::log(w.area()));
  }
}

TEST_CASE("three-point mixture likelihood matches the written-out formula") {
  const Window w{400.0, 300.0};
  PointPattern p;
  p.window = w;
  p.points = {{90.0, 80.0}, {210.0, 140.0}, {160.0, 230.0}};
  const SoftcoreParams params{60.0, 0.4};
  const double theta = 0.5;
  const QuadratureScheme quad = make_regular_quadrature(w, 768);

  const auto series = log_normalizer_series(p, params, quad);
  double direct = -std::log(w.area());
  for (std::size_t k = 1; k < 3; ++k) {
    std::vector<Point> prefix(p.points.begin(), p.points.begin() + k);
    const double pot = softcore_log_potential(p.points[k], prefix, params);
    direct += std::log((1.0 - theta) * std::exp(series[k - 1]) * std::exp(pot) +
                       theta / w.area());
  }
  CHECK(mixture_loglik(p, {params, theta}, quad) ==
        doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("likelihood decreases as the inhibition range grows past a pair") {
  const Window w{500.0, 400.0};
  PointPattern p;
  p.window = w;
  p.points = {{200.0, 200.0}, {230.0, 200.0}, {400.0, 100.0}, {100.0, 320.0}};
  const QuadratureScheme quad = make_regular_quadrature(w, 400);
  double prev = kInf;
  for (const double R : {30.0, 50.0, 70.0, 90.0, 110.0}) {
    const double ll = seq_loglik(p, {R, 0.4}, quad);
    CHECK(ll < prev);
    prev = ll;
  }
}

TEST_CASE("arrival simulation yields the requested count") {
  Rng rng(55);
  const PointPattern p = simulate_sequential(37, {40.0, 0.5}, {600.0, 400.0}, rng);
  CHECK(p.size() == 37);
  CHECK_NOTHROW(validate_pattern(p));
}

TEST_CASE("vanishing interaction reproduces uniform arrivals") {
  Rng rng(23);
  const Window w{400.0, 300.0};
  std::vector<double> xs;
  for (int run = 0; run < 100; ++run) {
    const PointPattern p = simulate_sequential(20, {1e-12, 0.5}, w, rng);
    for (const Point& pt : p.points) xs.push_back(pt.x / w.width);
  }
  CHECK(stat_tests::ks_pvalue(xs, [](double u) { return u; }) > 0.01);
}

TEST_CASE("small softness approximates a hard core") {
  Rng rng(29);
  const Window w{2592.0, 1944.0};
  int ok = 0;
  for (int run = 0; run < 100; ++run) {
    const PointPattern p = simulate_sequential(100, {70.0, 0.05}, w, rng);
    if (pairwise_min_distance(p.points) >= 0.8 * 70.0) ++ok;
  }
  CHECK(ok >= 99);
}

TEST_CASE("noise-free mixture simulation shares the arrival stream") {
  Rng a(91), b(91);
  const Window w{700.0, 500.0};
  const PointPattern seq = simulate_sequential(30, {45.0, 0.4}, w, a);
  const PointPattern mix = simulate_mixture(30, {{45.0, 0.4}, 0.0}, w, b);
  REQUIRE(seq.size() == mix.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    CHECK(seq.points[i].x == mix.points[i].x);
    CHECK(seq.points[i].y == mix.points[i].y);
  }
}

TEST_CASE("pure-noise mixture arrivals are uniform") {
  Rng rng(37);
  const Window w{400.0, 300.0};
  std::vector<double> ys;
  for (int run = 0; run < 60; ++run) {
    const PointPattern p = simulate_mixture(25, {{80.0, 0.3}, 1.0}, w, rng);
    for (const Point& pt : p.points) ys.push_back(pt.y / w.height);
  }
  CHECK(stat_tests::ks_pvalue(ys, [](double u) { return u; }) > 0.01);
}

TEST_CASE("noise admits close pairs the arrival model suppresses") {
  const Window w{2592.0, 1944.0};
  Rng clean(61), noisy(62);
  std::size_t close_clean = 0, close_noisy = 0;
  const auto count_close = [](const PointPattern& p) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = i + 1; j < p.size(); ++j)
        if (distance(p.points[i], p.points[j]) < 35.0) ++c;
    return c;
  };
  for (int run = 0; run < 100; ++run) {
    close_clean += count_close(simulate_mixture(200, {{70.0, 0.4}, 0.0}, w, clean));
    close_noisy += count_close(simulate_mixture(200, {{70.0, 0.4}, 0.3}, w, noisy));
  }
  CHECK(close_noisy > close_clean);
}

TEST_CASE("saturated windows are reported") {
  Rng rng(41);
  CHECK_THROWS_AS(
      simulate_sequential(3, {1000.0, 0.5}, {50.0, 50.0}, rng, 2000),
      std::runtime_error);
}

TEST_CASE("simulated data prefer their generating parameters") {
  Rng rng(101);
  const Window w{2592.0, 1944.0};
  const QuadratureScheme quad = make_regular_quadrature(w, 1200);
  double at_truth = 0.0, at_double = 0.0;
  const int reps = 200;
  for (int rep = 0; rep < reps; ++rep) {
    const PointPattern p = simulate_sequential(100, {70.0, 0.4}, w, rng);
    const SequentialLoglik eval(p, quad);
    at_truth += eval.softcore_loglik({70.0, 0.4});
    at_double += eval.softcore_loglik({140.0, 0.4});
  }
  CHECK(at_truth / reps > at_double / reps);
}

TEST_CASE("second arrivals follow the quadrature-normalized density") {
  const Window w{400.0, 300.0};
  const SoftcoreParams params{60.0, 0.4};
  const int cx = 8, cy = 6;
  const QuadratureScheme fine = make_regular_quadrature(w, 6912);

  // Cell probabilities of the second point, marginalized over the first,
  // by double quadrature over the fine grid.
  std::vector<double> zinv(fine.size(), 0.0);
  for (std::size_t j = 0; j < fine.size(); ++j) {
    double m = kInf;
    std::vector<double> s(fine.size());
    for (std::size_t j2 = 0; j2 < fine.size(); ++j2) {
      const double d = distance(fine.nodes[j], fine.nodes[j2]);
      s[j2] = d > 0.0 ? std::pow(params.R / d, 2.0 / params.kappa) : kInf;
      m = std::min(m, s[j2]);
    }
    double acc = 0.0;
    for (std::size_t j2 = 0; j2 < fine.size(); ++j2)
      acc += fine.weights[j2] * std::exp(m - s[j2]);
    zinv[j] = std::exp(-m) * acc;  // integral of exp(potential) given x1 = node j
  }
  std::vector<double> prob(cx * cy, 0.0);
  for (std::size_t j = 0; j < fine.size(); ++j) {
    for (std::size_t j2 = 0; j2 < fine.size(); ++j2) {
      const double d = distance(fine.nodes[j], fine.nodes[j2]);
      const double dens =
          (d > 0.0 ? std::exp(-std::pow(params.R / d, 2.0 / params.kappa))
                   : 0.0) /
          zinv[j];
      const int bx = std::min(cx - 1, static_cast<int>(fine.nodes[j2].x /
                                                       (w.width / cx)));
      const int by = std::min(cy - 1, static_cast<int>(fine.nodes[j2].y /
                                                       (w.height / cy)));
      prob[by * cx + bx] +=
          fine.weights[j] / w.area() * fine.weights[j2] * dens;
    }
  }
  double total = 0.0;
  for (const double v : prob) total += v;
  for (double& v : prob) v /= total;

  Rng rng(71);
  std::vector<double> counts(cx * cy, 0.0);
  const int sims = 10000;
  for (int i = 0; i < sims; ++i) {
    const PointPattern p = simulate_sequential(2, params, w, rng);
    const Point& y = p.points[1];
    const int bx = std::min(cx - 1, static_cast<int>(y.x / (w.width / cx)));
    const int by = std::min(cy - 1, static_cast<int>(y.y / (w.height / cy)));
    counts[by * cx + bx] += 1.0;
  }
  CHECK(stat_tests::chi_square_gof_pvalue(counts, prob) > 0.01);
}
