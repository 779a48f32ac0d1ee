#pragma once

#include <vector>

#include "sweatpp/geometry.hpp"

namespace sweatpp {

struct QuadratureScheme {
  std::vector<Point> nodes;
  std::vector<double> weights;  // pixel^2, sum to the window area

  std::size_t size() const { return nodes.size(); }
};

// Regular grid of cell centers. The row/column counts are chosen to match
// the window aspect ratio as closely as possible subject to their product
// staying within a factor 1.2 of target_count; each weight is the cell area.
QuadratureScheme make_regular_quadrature(const Window& window,
                                         int target_count);

}  // namespace sweatpp
