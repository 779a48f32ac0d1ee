#include "sweatpp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sweatpp {

void validate_pattern(const PointPattern& pattern) {
  if (!(pattern.window.width > 0.0) || !(pattern.window.height > 0.0))
    throw std::invalid_argument("pattern window must have positive extent");
  for (std::size_t i = 0; i < pattern.points.size(); ++i) {
    const Point& p = pattern.points[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw std::invalid_argument("pattern point " + std::to_string(i) +
                                  " has non-finite coordinates");
    if (!pattern.window.contains(p))
      throw std::invalid_argument("pattern point " + std::to_string(i) +
                                  " lies outside the window");
  }
}

double squared_distance(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

double distance(const Point& a, const Point& b) {
  return std::sqrt(squared_distance(a, b));
}

double pairwise_min_distance(const std::vector<Point>& points) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      best = std::min(best, squared_distance(points[i], points[j]));
  return std::sqrt(best);
}

CellGrid::CellGrid(const Window& window, double cell_size)
    : cell_size_(cell_size) {
  if (!(cell_size > 0.0))
    throw std::invalid_argument("CellGrid cell size must be positive");
  nx_ = std::max(1, static_cast<int>(std::ceil(window.width / cell_size)));
  ny_ = std::max(1, static_cast<int>(std::ceil(window.height / cell_size)));
  cells_.resize(static_cast<std::size_t>(nx_) * ny_);
}

int CellGrid::cell_index(const Point& p) const {
  int cx = static_cast<int>(p.x / cell_size_);
  int cy = static_cast<int>(p.y / cell_size_);
  cx = std::clamp(cx, 0, nx_ - 1);
  cy = std::clamp(cy, 0, ny_ - 1);
  return cy * nx_ + cx;
}

void CellGrid::insert(const Point& p) {
  cells_[cell_index(p)].push_back(p);
  ++count_;
}

void CellGrid::clear() {
  for (auto& c : cells_) c.clear();
  count_ = 0;
}

bool CellGrid::has_point_within_sq(const Point& p, double r_sq) const {
  int cx = static_cast<int>(p.x / cell_size_);
  int cy = static_cast<int>(p.y / cell_size_);
  cx = std::clamp(cx, 0, nx_ - 1);
  cy = std::clamp(cy, 0, ny_ - 1);
  // Valid as long as sqrt(r_sq) <= cell_size_, which is how the simulator
  // sizes the grid. A wider radius would need a wider scan.
  for (int dy = -1; dy <= 1; ++dy) {
    const int yy = cy + dy;
    if (yy < 0 || yy >= ny_) continue;
    for (int dx = -1; dx <= 1; ++dx) {
      const int xx = cx + dx;
      if (xx < 0 || xx >= nx_) continue;
      for (const Point& q : cells_[yy * nx_ + xx])
        if (squared_distance(p, q) < r_sq) return true;
    }
  }
  return false;
}

bool CellGrid::has_point_closer_than(const Point& p, double r) const {
  return has_point_within_sq(p, r * r);
}

double CellGrid::nearest_squared_distance(const Point& p) const {
  double best = std::numeric_limits<double>::infinity();
  if (count_ == 0) return best;
  int cx = static_cast<int>(p.x / cell_size_);
  int cy = static_cast<int>(p.y / cell_size_);
  cx = std::clamp(cx, 0, nx_ - 1);
  cy = std::clamp(cy, 0, ny_ - 1);
  // Scan rings of cells outward; stop once the nearest possible cell in the
  // next ring cannot beat the best distance found so far.
  const int max_ring = std::max(nx_, ny_);
  for (int ring = 0; ring <= max_ring; ++ring) {
    if (std::isfinite(best)) {
      const double reach = (ring - 1) * cell_size_;
      if (reach > 0.0 && reach * reach > best) break;
    }
    bool any_cell = false;
    for (int dy = -ring; dy <= ring; ++dy) {
      const int yy = cy + dy;
      if (yy < 0 || yy >= ny_) continue;
      for (int dx = -ring; dx <= ring; ++dx) {
        if (std::max(std::abs(dx), std::abs(dy)) != ring) continue;
        const int xx = cx + dx;
        if (xx < 0 || xx >= nx_) continue;
        any_cell = true;
        for (const Point& q : cells_[yy * nx_ + xx])
          best = std::min(best, squared_distance(p, q));
      }
    }
    if (!any_cell && ring > 0 && std::isfinite(best)) break;
  }
  return best;
}

}  // namespace sweatpp
