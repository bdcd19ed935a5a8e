#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "exactone/geometry.hpp"

namespace exactone::testing {

inline constexpr double kPi = std::numbers::pi;
inline const double kSqrt2 = std::sqrt(2.0);
inline const double kSqrt3 = std::sqrt(3.0);

inline ReducedBasis hexagonal() { return lattice_from_params(1.0, kPi / 3.0); }
inline ReducedBasis square() { return lattice_from_params(1.0, kPi / 2.0); }

struct Params {
  double t;
  double gamma;
};

// Uniform (t, γ) in the normalised domain t ∈ [t_lo, t_hi], arccos(t/2) ≤ γ ≤ π/2.
inline std::vector<Params> random_params(int count, unsigned seed, double t_lo = 0.05,
                                         double t_hi = 1.0) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Params> out;
  for (int k = 0; k < count; ++k) {
    const double t = t_lo + (t_hi - t_lo) * unit(gen);
    const double lo = std::acos(t / 2.0);
    out.push_back({t, lo + (kPi / 2.0 - lo) * unit(gen)});
  }
  return out;
}

// Random lattices as raw (unreduced) bases with random rotation and scale.
inline std::vector<LatticeBasis> random_bases(int count, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  std::vector<LatticeBasis> out;
  while (static_cast<int>(out.size()) < count) {
    const Vec2 a{coord(gen), coord(gen)};
    const Vec2 b{coord(gen), coord(gen)};
    if (std::abs(cross(a, b)) > 0.05 * a.norm() * b.norm()) out.push_back({a, b});
  }
  return out;
}

}  // namespace exactone::testing
