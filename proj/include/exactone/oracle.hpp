#pragma once

#include <cstdint>

#include "exactone/geometry.hpp"

// Sampling and quadrature estimates of exactly-one and cover-count statistics.
// Nothing here uses the arc-angle formulas: every estimate counts disks that
// contain a point, over all lattice points that can reach it.
namespace exactone::oracle {

// SplitMix64 used as a counter-based generator: the k-th value of stream
// `seed` is mix64(seed + (k + 1)·0x9E3779B97F4A7C15), with the standard
// SplitMix64 finaliser (shifts 30/27/31, multipliers 0xBF58476D1CE4E5B9 and
// 0x94D049BB133111EB). Any draw is addressable without generating the ones
// before it, so work can be split across threads without changing results.
class CounterRng {
 public:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  explicit constexpr CounterRng(std::uint64_t seed) : seed_(seed) {}

  static constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  constexpr std::uint64_t bits(std::uint64_t counter) const {
    return mix64(seed_ + (counter + 1) * kGolden);
  }

  // Uniform in [0, 1) with 53 random bits.
  constexpr double uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t seed_;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
};

// Fraction of uniform points of the fundamental domain covered by exactly one
// closed disk of radius rho. Estimates A_L(ρ)/det L. Any rho > 0 is accepted.
// Sample i uses counters 2i and 2i+1; `workers` only partitions the index range.
McEstimate mc_exactly_one(const ReducedBasis& rb, double rho, std::int64_t n, std::uint64_t seed,
                          int workers = 1);

// Mean number of disks covering a uniform point. Estimates πρ²/det L.
McEstimate mc_cover_count(const ReducedBasis& rb, double rho, std::int64_t n, std::uint64_t seed,
                          int workers = 1);

// Midpoint rule on a resolution × resolution grid in lattice coordinates of
// the fundamental domain. Returns an area (not a probability).
double grid_area_exactly_one(const ReducedBasis& rb, double rho, int resolution, int workers = 1);

}  // namespace exactone::oracle
