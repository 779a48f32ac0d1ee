#pragma once

#include <cstdint>

#include "sweatpp/geometry.hpp"
#include "sweatpp/rng.hpp"

namespace sweatpp {

struct GenerativeParams {
  double R = 0.0;      // hard-core range, pixels
  double sigma = 0.0;  // Gaussian disturbance scale, pixels
  double p = 1.0;      // activation probability, in (0,1]
};

// Simple sequential inhibition: uniform proposals accepted iff at distance
// >= R from every previously accepted point, stopping after max_failures
// consecutive rejections.
PointPattern simulate_ssi(double R, const Window& window,
                          std::uint64_t max_failures, Rng& rng);

// Independent N(0, sigma^2 I) displacement of every point. Points may leave
// the window; the caller decides what to do about that.
PointPattern disturb(const PointPattern& pattern, double sigma, Rng& rng);

// Independent thinning with retention probability p, order preserved.
PointPattern thin(const PointPattern& pattern, double p, Rng& rng);

// SSI on the window dilated by R + 4*sigma per side, disturbed, cropped back
// to the window, then thinned. The dilation keeps the intensity flat near
// the boundary after the disturbance.
PointPattern simulate_generative(const GenerativeParams& params,
                                 const Window& window, Rng& rng,
                                 std::uint64_t max_failures = 300);

}  // namespace sweatpp
