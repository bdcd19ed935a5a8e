#pragma once

#include <vector>

#include "exactone/geometry.hpp"

namespace exactone {

// Angles of the arcs of the circle ∂B(0, ρ) cut away by the three neighbor
// pairs ±a, ±b, ±c. phi_i = 2·arccos(len_i / 2ρ) once the neighbor disk
// reaches the circle, 0 before that.
struct ArcAngles {
  double rho = 0.0;
  double phi1 = 0.0;  // paired with ‖a‖
  double phi2 = 0.0;  // paired with ‖b‖
  double phi3 = 0.0;  // paired with ‖c‖

  double sum() const { return phi1 + phi2 + phi3; }
  int positive_count() const {
    return (phi1 > 0.0 ? 1 : 0) + (phi2 > 0.0 ? 1 : 0) + (phi3 > 0.0 ? 1 : 0);
  }
};

struct EquilibriumSolution {
  double rho_eq = 0.0;
  ArcAngles arcs;
  int case_index = 0;  // 1, 2 or 3: number of neighbor pairs cutting the disk
  double area = 0.0;
  double probability = 0.0;
};

struct ProfilePoint {
  double rho = 0.0;
  double area = 0.0;
  double probability = 0.0;
};

// All functions below taking rho require r_pack ≤ rho ≤ r_cover (relative
// slack kRelTol) and throw std::range_error otherwise.

ArcAngles arc_angles(const ReducedBasis& rb, double rho);

// Φ_L(ρ) = 2π − 2(φ1 + φ2 + φ3): total angle of the part of ∂B(0, ρ) that is
// not covered by another disk. Decreases from 2π at r_pack to 0 at r_cover.
double convex_total(const ArcAngles& arcs);

// A(ρ) = πρ² − 2ρ² Σ (φ_i − sin φ_i): the disk minus its six segments beyond
// the Voronoi edges. This is the area of the partial disk (points of B(0, ρ)
// in no other disk) as long as ρ ≤ segments_disjoint_limit(rb), which always
// holds at ρ_L. Past that limit two segments overlap and A undercounts.
double area_exactly_one(const ReducedBasis& rb, double rho);

// dA/dρ = 2ρ (Φ_L(ρ) − π).
double area_derivative(const ReducedBasis& rb, double rho);

// Unique ρ_L in (r_pack, r_cover) with φ1 + φ2 + φ3 = π/2, by bisection in
// extended precision, rounded to double.
// Throws std::logic_error if the residual fails to bracket a root.
double equilibrium_radius(const ReducedBasis& rb);

// Equilibrium radius together with area and probability A_L(ρ_L)/det L.
// Arcs, area and probability are evaluated at the extended-precision root,
// so arcs.sum() can be closer to π/2 than arc_angles(rb, rho_eq) is.
// The probability is cross-checked against 2ρ²Σ sin φ_i / det L.
EquilibriumSolution equilibrium_probability(const ReducedBasis& rb);

// n_points samples of A_L on a uniform grid over [r_pack, r_cover].
std::vector<ProfilePoint> area_profile(const ReducedBasis& rb, int n_points);

// True when the six segments of B(0, ρ) beyond the Voronoi edges are pairwise
// disjoint, i.e. neighbouring cut arcs do not overlap on the circle.
bool cut_arcs_disjoint(const ReducedBasis& rb, double rho);

// Largest ρ ≤ r_cover for which the six disk segments have disjoint
// interiors: min(r_cover, smallest disk enclosing 0 and two relevant
// vectors). Equals r_cover unless the lattice is thin (e.g. ‖a‖ < r_cover).
double segments_disjoint_limit(const ReducedBasis& rb);

}  // namespace exactone
