#pragma once

#include <cstdint>
#include <random>

namespace sweatpp {

// All randomness in the library flows through this class. The engine is
// std::mt19937_64 (bit-exact across platforms by the standard); every
// distribution transform is implemented here rather than taken from
// <random>, whose distributions are implementation-defined and would break
// run-for-run reproducibility across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // Child stream k of this stream's seed. A pure function of (seed, k):
  // independent of how much has been drawn from *this, so parallel or
  // out-of-order workers get reproducible, non-overlapping streams.
  Rng split(std::uint64_t k) const;

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64();

  // Uniform on [0, 1), 53-bit resolution.
  double uniform();
  double uniform(double a, double b);

  // Standard normal via Box-Muller; the second value of each pair is cached.
  double normal();
  double normal(double mean, double sd);

  // Marsaglia-Tsang for shape >= 1, with the boost trick for shape < 1.
  double gamma(double shape, double scale);

  // Exact; chunked product method so large means do not underflow.
  std::uint64_t poisson(double mean);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace sweatpp
