#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace sweatpp {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Axis-aligned observation rectangle [0, width] x [0, height].
struct Window {
  double width = 0.0;
  double height = 0.0;

  double area() const { return width * height; }
  bool contains(const Point& p) const {
    return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height;
  }
};

// The imaged skin region: 2592 x 1944 px covering 17.5 x 13 mm^2.
inline constexpr double kMmPerPixel = 17.5 / 2592.0;

struct PointPattern {
  Window window;
  std::vector<Point> points;

  std::size_t size() const { return points.size(); }
};

// Throws std::invalid_argument on a degenerate window, a point outside the
// window, or a non-finite coordinate.
void validate_pattern(const PointPattern& pattern);

double distance(const Point& a, const Point& b);
double squared_distance(const Point& a, const Point& b);

// Smallest inter-point distance; +inf for patterns with fewer than 2 points.
double pairwise_min_distance(const std::vector<Point>& points);

// Uniform grid over a window for neighborhood queries. Cell size is chosen
// at build time; queries that only care about distances below `cell_size`
// need to scan at most the 3x3 block around a location.
class CellGrid {
 public:
  CellGrid(const Window& window, double cell_size);

  void insert(const Point& p);
  void clear();

  // True iff some inserted point lies within distance r of p (strictly
  // d^2 < r^2, callers wanting closed comparisons use has_point_within_sq).
  bool has_point_closer_than(const Point& p, double r) const;

  // True iff some inserted point q has squared_distance(p, q) < r_sq.
  bool has_point_within_sq(const Point& p, double r_sq) const;

  // Squared distance to the nearest inserted point; +inf if empty.
  double nearest_squared_distance(const Point& p) const;

  std::size_t size() const { return count_; }

 private:
  double cell_size_;
  int nx_ = 0;
  int ny_ = 0;
  std::size_t count_ = 0;
  std::vector<std::vector<Point>> cells_;

  int cell_index(const Point& p) const;
};

}  // namespace sweatpp
