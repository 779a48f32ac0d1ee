#pragma once

#include <cstdint>
#include <vector>

#include "sweatpp/geometry.hpp"

namespace sweatpp {

struct Image {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<double> pixels;  // row-major

  double at(std::size_t row, std::size_t col) const {
    return pixels[row * width + col];
  }
  double& at(std::size_t row, std::size_t col) {
    return pixels[row * width + col];
  }
};

// Grayscale video, 1 frame per second, frame-major storage. Intensities are
// kept as float: a full-resolution 60-frame recording is ~1.2 GB this way.
struct FrameStack {
  std::size_t frames = 0;
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<float> data;

  float at(std::size_t t, std::size_t row, std::size_t col) const {
    return data[(t * height + row) * width + col];
  }
  float& at(std::size_t t, std::size_t row, std::size_t col) {
    return data[(t * height + row) * width + col];
  }
};

struct ChangePointResult {
  int t_star = 0;        // frame index in 1..T-1
  double mean_diff = 0;  // mean after the split minus mean before it
  double f_min = 0;
};

// Gaussian smoothing of the first frame (separable, kernel truncated at 3
// sigma, boundary handled by renormalizing the truncated mass). Inputs are
// clamped to >= 1e-6 first so the result can be divided by.
Image background_correct(const Image& first_frame, double sigma);

// Split-point search on one pixel's intensity series: three 1s are
// prepended, then f(t) = var(x_{-2..t}) + var(x_{t+1..T}) is minimized over
// t = 1..T-1 (population variances, smallest t on ties).
ChangePointResult pixel_change_point(const std::vector<double>& series);

// Per-pixel first wet frame; kInt32Never means the pixel never turns wet.
// Monotone by construction: wet(t) = {pixels with wet_from <= t}.
struct WetSequence {
  static constexpr std::int32_t kNever = INT32_MAX;
  std::size_t frames = 0;
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<std::int32_t> wet_from;  // row-major H x W

  bool wet(std::size_t t, std::size_t row, std::size_t col) const {
    return wet_from[row * width + col] <= static_cast<std::int32_t>(t);
  }
};

// Scales every pixel series by the lighting field, finds its change point,
// and marks the pixel wet from t_star + 1 onward when the level drop is at
// least `threshold` (sweat darkens the image). A 3x3 morphological closing
// is applied per frame unless disabled; wet status accumulates so masks
// never shrink.
WetSequence binarize_stack(const FrameStack& stack, const Image& lighting,
                           double threshold, bool closing = true);

// Tracks wet components through time: connected components (8-connectivity)
// of newly wet pixels either join the spot whose centroid is nearest (within
// merge_radius) or seed new spots. Spots smaller than min_spot pixels are
// dropped. One output point per spot at the centroid of its earliest-frame
// pixels, ordered by first appearance, larger final size first on ties.
PointPattern extract_spots(const WetSequence& wet, double merge_radius = 15.0,
                           std::size_t min_spot = 20);

}  // namespace sweatpp
