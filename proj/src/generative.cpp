#include "sweatpp/generative.hpp"

#include <stdexcept>

namespace sweatpp {

PointPattern simulate_ssi(double R, const Window& window,
                          std::uint64_t max_failures, Rng& rng) {
  if (!(R > 0.0)) throw std::invalid_argument("SSI needs R > 0");
  if (max_failures < 1)
    throw std::invalid_argument("SSI needs max_failures >= 1");
  PointPattern pattern;
  pattern.window = window;
  CellGrid grid(window, R);
  const double r_sq = R * R;
  std::uint64_t failures = 0;
  while (failures < max_failures) {
    const Point y{rng.uniform(0.0, window.width),
                  rng.uniform(0.0, window.height)};
    if (grid.has_point_within_sq(y, r_sq)) {
      ++failures;
    } else {
      grid.insert(y);
      pattern.points.push_back(y);
      failures = 0;
    }
  }
  return pattern;
}

PointPattern disturb(const PointPattern& pattern, double sigma, Rng& rng) {
  if (sigma < 0.0) throw std::invalid_argument("disturb needs sigma >= 0");
  if (sigma == 0.0) return pattern;
  PointPattern out;
  out.window = pattern.window;
  out.points.reserve(pattern.points.size());
  for (const Point& p : pattern.points)
    out.points.push_back(
        {p.x + rng.normal(0.0, sigma), p.y + rng.normal(0.0, sigma)});
  return out;
}

PointPattern thin(const PointPattern& pattern, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("thinning probability must lie in [0,1]");
  PointPattern out;
  out.window = pattern.window;
  for (const Point& x : pattern.points)
    if (rng.uniform() < p) out.points.push_back(x);
  return out;
}

PointPattern simulate_generative(const GenerativeParams& params,
                                 const Window& window, Rng& rng,
                                 std::uint64_t max_failures) {
  if (!(params.R > 0.0)) throw std::invalid_argument("R must be positive");
  if (params.sigma < 0.0)
    throw std::invalid_argument("sigma must be nonnegative");
  if (!(params.p > 0.0 && params.p <= 1.0))
    throw std::invalid_argument("p must lie in (0,1]");

  const double margin = params.R + 4.0 * params.sigma;
  const Window dilated{window.width + 2.0 * margin,
                       window.height + 2.0 * margin};
  PointPattern ssi = simulate_ssi(params.R, dilated, max_failures, rng);
  PointPattern moved = disturb(ssi, params.sigma, rng);

  PointPattern cropped;
  cropped.window = window;
  for (const Point& q : moved.points) {
    const Point shifted{q.x - margin, q.y - margin};
    if (window.contains(shifted)) cropped.points.push_back(shifted);
  }
  return thin(cropped, params.p, rng);
}

}  // namespace sweatpp
