#include "sweatpp/summaries.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sweatpp {

namespace {

void check_r_grid(const std::vector<double>& r_grid, bool forbid_zero) {
  if (r_grid.empty()) throw std::invalid_argument("empty r grid");
  double prev = 0.0;
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    if (!(r_grid[i] > prev) || (forbid_zero && r_grid[i] <= 0.0))
      throw std::invalid_argument(
          "r grid must be strictly increasing and positive");
    prev = r_grid[i];
  }
}

// First index k with value[k] >= threshold and k >= start; linear
// interpolation against the previous grid point when one exists inside the
// searched range.
std::optional<double> first_upcrossing(const std::vector<double>& r,
                                       const std::vector<double>& value,
                                       std::size_t start, double threshold) {
  for (std::size_t k = start; k < value.size(); ++k) {
    if (value[k] >= threshold) {
      if (k == start) return r[k];
      const double v0 = value[k - 1];
      const double v1 = value[k];
      return r[k - 1] + (threshold - v0) * (r[k] - r[k - 1]) / (v1 - v0);
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<double> default_r_grid(const Window& window) {
  const std::size_t count = 512;
  const double step = window.width / 4.0 / static_cast<double>(count);
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i)
    grid[i] = static_cast<double>(i + 1) * step;
  return grid;
}

double default_f_lattice_spacing(const Window& window) {
  return window.width / 256.0;
}

FunctionEstimate estimate_pcf(const PointPattern& pattern,
                              const std::vector<double>& r_grid,
                              std::optional<double> bandwidth) {
  validate_pattern(pattern);
  if (pattern.points.size() < 2)
    throw std::invalid_argument("pcf estimator needs at least 2 points");
  check_r_grid(r_grid, true);

  const std::size_t n = pattern.points.size();
  const Window& w = pattern.window;
  const double lambda = static_cast<double>(n) / w.area();
  const double b = bandwidth ? *bandwidth : 0.15 / std::sqrt(lambda);
  if (!(b > 0.0)) throw std::invalid_argument("bandwidth must be positive");

  FunctionEstimate out;
  out.kind = StatKind::pcf;
  out.r = r_grid;
  out.value.assign(r_grid.size(), 0.0);

  const double r_max = r_grid.back();
  const double kernel_scale = 3.0 / (4.0 * b);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = pattern.points[i].x - pattern.points[j].x;
      const double dy = pattern.points[i].y - pattern.points[j].y;
      const double d = std::sqrt(dx * dx + dy * dy);
      if (d - b > r_max) continue;
      const double area = std::max(0.0, (w.width - std::abs(dx))) *
                          std::max(0.0, (w.height - std::abs(dy)));
      if (area <= 0.0) continue;
      // Each unordered pair appears twice in the i != j sum.
      const double c = 2.0 / area;
      const auto lo = std::lower_bound(r_grid.begin(), r_grid.end(), d - b);
      for (auto it = lo; it != r_grid.end() && *it <= d + b; ++it) {
        const double u = (*it - d) / b;
        out.value[static_cast<std::size_t>(it - r_grid.begin())] +=
            kernel_scale * (1.0 - u * u) * c;
      }
    }
  }
  const double denom = 2.0 * M_PI * lambda * lambda;
  for (std::size_t k = 0; k < out.value.size(); ++k)
    out.value[k] /= denom * r_grid[k];
  return out;
}

FunctionEstimate estimate_F(const PointPattern& pattern,
                            const std::vector<double>& r_grid,
                            double lattice_spacing) {
  validate_pattern(pattern);
  if (pattern.points.empty())
    throw std::invalid_argument("empty space function needs a non-empty pattern");
  if (!(lattice_spacing > 0.0))
    throw std::invalid_argument("lattice spacing must be positive");
  check_r_grid(r_grid, false);

  const Window& w = pattern.window;
  const double cell =
      std::max(1e-9, std::sqrt(w.area() / static_cast<double>(
                                              pattern.points.size())));
  CellGrid grid(w, cell);
  for (const Point& p : pattern.points) grid.insert(p);

  // One observation per lattice location: time = min(distance to nearest
  // point, distance to boundary), event iff the point distance wins.
  struct Obs {
    double t;
    bool event;
  };
  std::vector<Obs> obs;
  for (double y = 0.5 * lattice_spacing; y <= w.height;
       y += lattice_spacing) {
    for (double x = 0.5 * lattice_spacing; x <= w.width;
         x += lattice_spacing) {
      const Point u{x, y};
      const double d = std::sqrt(grid.nearest_squared_distance(u));
      const double c =
          std::min(std::min(x, w.width - x), std::min(y, w.height - y));
      obs.push_back({std::min(d, c), d <= c});
    }
  }
  std::sort(obs.begin(), obs.end(),
            [](const Obs& a, const Obs& b) { return a.t < b.t; });

  FunctionEstimate out;
  out.kind = StatKind::empty_space;
  out.r = r_grid;
  out.value.assign(r_grid.size(), 0.0);

  double survival = 1.0;
  std::size_t at_risk = obs.size();
  std::size_t i = 0;
  for (std::size_t k = 0; k < r_grid.size(); ++k) {
    while (i < obs.size() && obs[i].t <= r_grid[k]) {
      // Group all observations tied at this time: censored ones stay in the
      // risk set for the events at the same time.
      const double t = obs[i].t;
      std::size_t events = 0;
      std::size_t ties = 0;
      while (i < obs.size() && obs[i].t == t) {
        events += obs[i].event ? 1 : 0;
        ++ties;
        ++i;
      }
      if (events > 0 && at_risk > 0)
        survival *= 1.0 - static_cast<double>(events) /
                              static_cast<double>(at_risk);
      at_risk -= ties;
    }
    out.value[k] = 1.0 - survival;
  }
  return out;
}

FunctionEstimate pool_pcf(const std::vector<FunctionEstimate>& estimates,
                          const std::vector<std::size_t>& counts) {
  if (estimates.empty())
    throw std::invalid_argument("pool_pcf needs at least one estimate");
  if (estimates.size() != counts.size())
    throw std::invalid_argument("pool_pcf: one count per estimate required");
  const FunctionEstimate& first = estimates.front();
  double total_weight = 0.0;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    if (estimates[i].r != first.r)
      throw std::invalid_argument("pool_pcf: estimates on different grids");
    if (counts[i] == 0)
      throw std::invalid_argument("pool_pcf: counts must be positive");
    total_weight += static_cast<double>(counts[i]) * counts[i];
  }
  FunctionEstimate out;
  out.kind = first.kind;
  out.r = first.r;
  out.value.assign(first.r.size(), 0.0);
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    const double wgt =
        static_cast<double>(counts[i]) * counts[i] / total_weight;
    for (std::size_t k = 0; k < out.value.size(); ++k)
      out.value[k] += wgt * estimates[i].value[k];
  }
  return out;
}

std::optional<SummaryVector> abc_summaries(const PointPattern& pattern) {
  if (pattern.points.size() < 2) return std::nullopt;
  const std::vector<double> grid = default_r_grid(pattern.window);
  const FunctionEstimate g = estimate_pcf(pattern, grid);

  std::size_t start = 0;
  while (start < grid.size() && grid[start] <= 10.0) ++start;
  if (start == grid.size()) return std::nullopt;

  const auto r1 = first_upcrossing(g.r, g.value, start, 0.75);
  if (!r1) return std::nullopt;
  const auto r2 = first_upcrossing(g.r, g.value, start, 1.0);
  if (!r2) return std::nullopt;

  const FunctionEstimate f =
      estimate_F(pattern, grid, default_f_lattice_spacing(pattern.window));
  const auto r3 = first_upcrossing(f.r, f.value, 0, 0.5);
  if (!r3) return std::nullopt;
  return SummaryVector{*r1, *r2, *r3};
}

}  // namespace sweatpp
