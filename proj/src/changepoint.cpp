#include "sweatpp/changepoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sweatpp {

namespace {

// Change point of the padded series held in prefix-sum form: sums[i] and
// squares[i] cover the first i padded values, padded length T+3.
ChangePointResult change_point_from_sums(const std::vector<double>& sums,
                                         const std::vector<double>& squares,
                                         std::size_t T) {
  ChangePointResult best;
  best.f_min = std::numeric_limits<double>::infinity();
  for (std::size_t t = 1; t + 1 <= T; ++t) {
    const double c1 = static_cast<double>(t + 3);
    const double c2 = static_cast<double>(T - t);
    const double m1 = sums[t + 3] / c1;
    const double m2 = (sums[T + 3] - sums[t + 3]) / c2;
    const double v1 = std::max(0.0, squares[t + 3] / c1 - m1 * m1);
    const double v2 =
        std::max(0.0, (squares[T + 3] - squares[t + 3]) / c2 - m2 * m2);
    const double f = v1 + v2;
    if (f < best.f_min) {
      best.f_min = f;
      best.t_star = static_cast<int>(t);
      best.mean_diff = m2 - m1;
    }
  }
  return best;
}

void fill_padded_sums(const double* x, std::size_t T,
                      std::vector<double>& sums,
                      std::vector<double>& squares) {
  sums.resize(T + 4);
  squares.resize(T + 4);
  sums[0] = squares[0] = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    sums[i + 1] = sums[i] + 1.0;
    squares[i + 1] = squares[i] + 1.0;
  }
  for (std::size_t i = 0; i < T; ++i) {
    sums[i + 4] = sums[i + 3] + x[i];
    squares[i + 4] = squares[i + 3] + x[i] * x[i];
  }
}

// 3x3 square closing, separable min/max passes. Dilation treats the outside
// as dry, erosion ignores it, which keeps the closing extensive (never
// removes a wet pixel).
void close3x3(const std::vector<std::uint8_t>& in, std::size_t H,
              std::size_t W, std::vector<std::uint8_t>& tmp,
              std::vector<std::uint8_t>& out) {
  tmp.resize(H * W);
  out.resize(H * W);
  const auto pass = [&](const std::vector<std::uint8_t>& src,
                        std::vector<std::uint8_t>& dst, bool dilate) {
    // Horizontal then vertical.
    for (std::size_t r = 0; r < H; ++r) {
      const std::uint8_t* row = src.data() + r * W;
      std::uint8_t* drow = dst.data() + r * W;
      for (std::size_t c = 0; c < W; ++c) {
        std::uint8_t v = row[c];
        if (c > 0) v = dilate ? std::max(v, row[c - 1]) : std::min(v, row[c - 1]);
        if (c + 1 < W)
          v = dilate ? std::max(v, row[c + 1]) : std::min(v, row[c + 1]);
        drow[c] = v;
      }
    }
    std::vector<std::uint8_t> col(H);
    for (std::size_t c = 0; c < W; ++c) {
      for (std::size_t r = 0; r < H; ++r) col[r] = dst[r * W + c];
      for (std::size_t r = 0; r < H; ++r) {
        std::uint8_t v = col[r];
        if (r > 0) v = dilate ? std::max(v, col[r - 1]) : std::min(v, col[r - 1]);
        if (r + 1 < H)
          v = dilate ? std::max(v, col[r + 1]) : std::min(v, col[r + 1]);
        dst[r * W + c] = v;
      }
    }
  };
  pass(in, tmp, true);
  pass(tmp, out, false);
}

}  // namespace

Image background_correct(const Image& first_frame, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (first_frame.pixels.size() != first_frame.height * first_frame.width)
    throw std::invalid_argument("malformed image");
  const std::size_t H = first_frame.height;
  const std::size_t W = first_frame.width;

  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  for (int i = -radius; i <= radius; ++i)
    kernel[i + radius] = std::exp(-0.5 * i * i / (sigma * sigma));

  Image clamped = first_frame;
  for (double& v : clamped.pixels) {
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("image intensities must be finite and >= 0");
    v = std::max(v, 1e-6);
  }

  // Rows, then columns; the truncated kernel is renormalized per position so
  // boundaries do not dim.
  Image mid = clamped;
  for (std::size_t r = 0; r < H; ++r) {
    for (std::size_t c = 0; c < W; ++c) {
      double acc = 0.0;
      double mass = 0.0;
      const int lo = std::max<int>(-radius, -static_cast<int>(c));
      const int hi = std::min<int>(radius, static_cast<int>(W - 1 - c));
      for (int i = lo; i <= hi; ++i) {
        acc += kernel[i + radius] * clamped.at(r, c + i);
        mass += kernel[i + radius];
      }
      mid.at(r, c) = acc / mass;
    }
  }
  Image out = mid;
  for (std::size_t c = 0; c < W; ++c) {
    for (std::size_t r = 0; r < H; ++r) {
      double acc = 0.0;
      double mass = 0.0;
      const int lo = std::max<int>(-radius, -static_cast<int>(r));
      const int hi = std::min<int>(radius, static_cast<int>(H - 1 - r));
      for (int i = lo; i <= hi; ++i) {
        acc += kernel[i + radius] * mid.at(r + i, c);
        mass += kernel[i + radius];
      }
      out.at(r, c) = acc / mass;
    }
  }
  return out;
}

ChangePointResult pixel_change_point(const std::vector<double>& series) {
  if (series.size() < 2)
    throw std::invalid_argument("change point needs at least 2 frames");
  std::vector<double> sums, squares;
  fill_padded_sums(series.data(), series.size(), sums, squares);
  return change_point_from_sums(sums, squares, series.size());
}

WetSequence binarize_stack(const FrameStack& stack, const Image& lighting,
                           double threshold, bool closing) {
  if (!(threshold > 0.0))
    throw std::invalid_argument("threshold must be positive");
  if (stack.frames < 2)
    throw std::invalid_argument("need at least 2 frames");
  if (stack.data.size() != stack.frames * stack.height * stack.width)
    throw std::invalid_argument("malformed frame stack");
  if (lighting.height != stack.height || lighting.width != stack.width)
    throw std::invalid_argument("lighting field dimensions do not match");
  for (const double l : lighting.pixels)
    if (!(l > 0.0))
      throw std::invalid_argument("lighting field must be strictly positive");

  const std::size_t H = stack.height;
  const std::size_t W = stack.width;
  const std::size_t T = stack.frames;

  WetSequence wet;
  wet.frames = T;
  wet.height = H;
  wet.width = W;
  wet.wet_from.assign(H * W, WetSequence::kNever);

  std::vector<double> series(T), sums, squares;
  for (std::size_t r = 0; r < H; ++r) {
    for (std::size_t c = 0; c < W; ++c) {
      const double l = lighting.at(r, c);
      for (std::size_t t = 0; t < T; ++t)
        series[t] = static_cast<double>(stack.at(t, r, c)) / l;
      fill_padded_sums(series.data(), T, sums, squares);
      const ChangePointResult cp = change_point_from_sums(sums, squares, T);
      if (cp.mean_diff <= -threshold)
        wet.wet_from[r * W + c] = cp.t_star + 1;
    }
  }
  if (!closing) return wet;

  // Close each frame's raw mask, then accumulate so wet pixels never revert.
  std::vector<std::int32_t> final_from(H * W, WetSequence::kNever);
  std::vector<std::uint8_t> mask(H * W), tmp, closed, acc(H * W, 0);
  for (std::size_t t = 1; t <= T; ++t) {
    for (std::size_t p = 0; p < H * W; ++p)
      mask[p] = wet.wet_from[p] <= static_cast<std::int32_t>(t) ? 1 : 0;
    close3x3(mask, H, W, tmp, closed);
    for (std::size_t p = 0; p < H * W; ++p) {
      if (closed[p]) acc[p] = 1;
      if (acc[p] && final_from[p] == WetSequence::kNever)
        final_from[p] = static_cast<std::int32_t>(t);
    }
  }
  wet.wet_from.swap(final_from);
  return wet;
}

PointPattern extract_spots(const WetSequence& wet, double merge_radius,
                           std::size_t min_spot) {
  if (wet.wet_from.size() != wet.height * wet.width)
    throw std::invalid_argument("malformed wet sequence");
  const std::size_t H = wet.height;
  const std::size_t W = wet.width;

  struct Spot {
    std::int32_t first_frame = 0;
    std::size_t count = 0;
    double sum_x = 0.0, sum_y = 0.0;        // all pixels, for tracking
    std::size_t first_count = 0;            // earliest-frame pixels only
    double first_sum_x = 0.0, first_sum_y = 0.0;
  };
  std::vector<Spot> spots;

  std::vector<std::int32_t> pending_stamp(H * W, 0);
  std::vector<std::size_t> frame_pixels, stack_buf;
  const double merge_sq = merge_radius * merge_radius;

  for (std::int32_t t = 1; t <= static_cast<std::int32_t>(wet.frames); ++t) {
    frame_pixels.clear();
    for (std::size_t p = 0; p < H * W; ++p)
      if (wet.wet_from[p] == t) frame_pixels.push_back(p);
    if (frame_pixels.empty()) continue;

    // Centroids are frozen at their start-of-frame values while this
    // frame's pixels are assigned.
    struct Add {
      std::size_t count = 0;
      double sum_x = 0.0, sum_y = 0.0;
    };
    std::vector<Add> adds(spots.size());
    std::vector<std::size_t> unassigned;
    for (const std::size_t p : frame_pixels) {
      const double x = static_cast<double>(p % W) + 0.5;
      const double y = static_cast<double>(p / W) + 0.5;
      std::size_t best = spots.size();
      double best_sq = merge_sq;
      for (std::size_t s = 0; s < spots.size(); ++s) {
        const double cx = spots[s].sum_x / static_cast<double>(spots[s].count);
        const double cy = spots[s].sum_y / static_cast<double>(spots[s].count);
        const double dsq = (x - cx) * (x - cx) + (y - cy) * (y - cy);
        if (dsq <= best_sq) {
          best_sq = dsq;
          best = s;
        }
      }
      if (best < spots.size()) {
        adds[best].count += 1;
        adds[best].sum_x += x;
        adds[best].sum_y += y;
      } else {
        unassigned.push_back(p);
        pending_stamp[p] = t;
      }
    }

    // Leftover pixels seed new spots, one per 8-connected component.
    for (const std::size_t seed : unassigned) {
      if (pending_stamp[seed] != t) continue;  // already consumed
      Spot spot;
      spot.first_frame = t;
      stack_buf.assign(1, seed);
      pending_stamp[seed] = -t;
      while (!stack_buf.empty()) {
        const std::size_t p = stack_buf.back();
        stack_buf.pop_back();
        const std::size_t r = p / W;
        const std::size_t c = p % W;
        const double x = static_cast<double>(c) + 0.5;
        const double y = static_cast<double>(r) + 0.5;
        spot.count += 1;
        spot.sum_x += x;
        spot.sum_y += y;
        spot.first_count += 1;
        spot.first_sum_x += x;
        spot.first_sum_y += y;
        for (int dr = -1; dr <= 1; ++dr) {
          for (int dc = -1; dc <= 1; ++dc) {
            if (dr == 0 && dc == 0) continue;
            const std::int64_t rr = static_cast<std::int64_t>(r) + dr;
            const std::int64_t cc = static_cast<std::int64_t>(c) + dc;
            if (rr < 0 || cc < 0 || rr >= static_cast<std::int64_t>(H) ||
                cc >= static_cast<std::int64_t>(W))
              continue;
            const std::size_t q = static_cast<std::size_t>(rr) * W +
                                  static_cast<std::size_t>(cc);
            if (pending_stamp[q] == t) {
              pending_stamp[q] = -t;
              stack_buf.push_back(q);
            }
          }
        }
      }
      spots.push_back(spot);
    }

    for (std::size_t s = 0; s < adds.size(); ++s) {
      spots[s].count += adds[s].count;
      spots[s].sum_x += adds[s].sum_x;
      spots[s].sum_y += adds[s].sum_y;
    }
  }

  std::vector<const Spot*> kept;
  for (const Spot& s : spots)
    if (s.count >= min_spot) kept.push_back(&s);
  if (kept.empty())
    throw std::invalid_argument(
        spots.empty() ? "no wet pixels to extract spots from"
                      : "every spot fell below the minimum size filter");

  std::sort(kept.begin(), kept.end(), [](const Spot* a, const Spot* b) {
    if (a->first_frame != b->first_frame)
      return a->first_frame < b->first_frame;
    if (a->count != b->count) return a->count > b->count;
    const double ax = a->first_sum_x / static_cast<double>(a->first_count);
    const double bx = b->first_sum_x / static_cast<double>(b->first_count);
    if (ax != bx) return ax < bx;
    return a->first_sum_y / static_cast<double>(a->first_count) <
           b->first_sum_y / static_cast<double>(b->first_count);
  });

  PointPattern pattern;
  pattern.window = {static_cast<double>(W), static_cast<double>(H)};
  for (const Spot* s : kept)
    pattern.points.push_back(
        {s->first_sum_x / static_cast<double>(s->first_count),
         s->first_sum_y / static_cast<double>(s->first_count)});
  return pattern;
}

}  // namespace sweatpp
