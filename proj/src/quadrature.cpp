#include "sweatpp/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace sweatpp {

QuadratureScheme make_regular_quadrature(const Window& window,
                                         int target_count) {
  if (target_count < 1)
    throw std::invalid_argument("quadrature target_count must be >= 1");
  if (!(window.width > 0.0) || !(window.height > 0.0))
    throw std::invalid_argument("quadrature window must have positive extent");

  const double aspect = window.width / window.height;
  const double target = static_cast<double>(target_count);

  int best_nx = 0;
  int best_ny = 0;
  double best_aspect_pen = std::numeric_limits<double>::infinity();
  double best_count_pen = std::numeric_limits<double>::infinity();

  const int nx_max = static_cast<int>(std::ceil(1.2 * target)) + 1;
  for (int nx = 1; nx <= nx_max; ++nx) {
    const int ny =
        std::max(1, static_cast<int>(std::llround(target / nx)));
    const double product = static_cast<double>(nx) * ny;
    if (product > 1.2 * target || product < target / 1.2) continue;
    const double aspect_pen =
        std::abs(std::log((static_cast<double>(nx) / ny) / aspect));
    const double count_pen = std::abs(product - target);
    if (aspect_pen < best_aspect_pen - 1e-12 ||
        (std::abs(aspect_pen - best_aspect_pen) <= 1e-12 &&
         count_pen < best_count_pen)) {
      best_nx = nx;
      best_ny = ny;
      best_aspect_pen = aspect_pen;
      best_count_pen = count_pen;
    }
  }
  if (best_nx == 0)
    throw std::logic_error("quadrature grid search found no feasible grid");

  const double cw = window.width / best_nx;
  const double ch = window.height / best_ny;
  const double cell_area = cw * ch;

  QuadratureScheme quad;
  quad.nodes.reserve(static_cast<std::size_t>(best_nx) * best_ny);
  quad.weights.assign(static_cast<std::size_t>(best_nx) * best_ny, cell_area);
  for (int j = 0; j < best_ny; ++j)
    for (int i = 0; i < best_nx; ++i)
      quad.nodes.push_back({(i + 0.5) * cw, (j + 0.5) * ch});
  return quad;
}

}  // namespace sweatpp
