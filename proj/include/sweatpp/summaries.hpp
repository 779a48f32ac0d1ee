#pragma once

#include <optional>
#include <vector>

#include "sweatpp/geometry.hpp"

namespace sweatpp {

enum class StatKind { pcf, empty_space };

struct FunctionEstimate {
  std::vector<double> r;      // strictly increasing, pixels
  std::vector<double> value;  // same length
  StatKind kind = StatKind::pcf;
};

// The three distances fed to ABC: first upcrossings of 0.75 and 1 on the
// pair correlation function past 10 px, and of 0.5 on the empty space
// function.
struct SummaryVector {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
};

// 512 grid points on (0, width/4].
std::vector<double> default_r_grid(const Window& window);
// Lattice spacing width/256 for the empty space function.
double default_f_lattice_spacing(const Window& window);

// Kernel pcf estimator with translational edge correction. Bandwidth
// defaults to 0.15/sqrt(lambda_hat) with lambda_hat = n/|W|; the kernel is
// Epanechnikov, k_b(u) = (3/(4b))(1 - (u/b)^2) on |u| <= b.
FunctionEstimate estimate_pcf(const PointPattern& pattern,
                              const std::vector<double>& r_grid,
                              std::optional<double> bandwidth = std::nullopt);

// Kaplan-Meier estimator of the empty space function from a lattice of test
// locations, censored by each location's distance to the window boundary.
FunctionEstimate estimate_F(const PointPattern& pattern,
                            const std::vector<double>& r_grid,
                            double lattice_spacing);

// Pointwise pooling weighted by squared point counts.
FunctionEstimate pool_pcf(const std::vector<FunctionEstimate>& estimates,
                          const std::vector<std::size_t>& counts);

// (r1, r2, r3) from the default grids; nullopt when any threshold is never
// crossed (ABC then treats the distance as infinite).
std::optional<SummaryVector> abc_summaries(const PointPattern& pattern);

}  // namespace sweatpp
