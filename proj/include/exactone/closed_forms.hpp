#pragma once

#include <array>

// Closed-form expressions for the equilibrium radius and probability in the
// three cases, all normalised to ‖b‖ = 1 with t = ‖a‖/‖b‖.
//
//   Case 1 (two arcs):  ‖a‖/2 < ρ_L ≤ ‖b‖/2, only ±a cut the disk.
//   Case 2 (four arcs): ‖b‖/2 < ρ_L ≤ ‖c‖/2, ±a and ±b cut the disk.
//   Case 3 (six arcs):  ‖c‖/2 < ρ_L < R_L, all three pairs cut the disk.
//
// Functions throw std::domain_error outside their region. These formulas are
// cross-checks for the numeric pipeline in partial_disk, which stays
// authoritative for arbitrary lattices.
namespace exactone::closed_forms {

struct CaseOptimum {
  int case_index = 0;
  double t_opt = 0.0;
  double gamma_opt = 0.0;
  double rho_opt = 0.0;
  double probability = 0.0;
};

struct CriticalRoots {
  double rho_1 = 0.0;
  double rho_2 = 0.0;
  double rho_3 = 0.0;
  double c_const = 0.0;      // 3 + 2√2
  bool rho_3_excluded = true;  // larger than every covering radius with t = 1
};

// P = t / sin γ, from ρ_L = t/√2 (φ1 = π/2). Requires t ≤ 1/√2.
double case1_probability(double t, double gamma);
CaseOptimum case1_optimum();

// ρ_L = √(½(t² + 1 − √2 t)), independent of γ. Requires 1/√2 < t ≤ 1.
double case2_radius(double t);

// Smallest γ that keeps ρ_L ≤ ‖c‖/2: arccos(√2 − (t² + 1)/2t). This is the
// Case 2 / Case 3 boundary.
double case2_gamma_min(double t);

// P = (2√2 t − t² − 1) / (t sin γ).
double case2_probability(double t, double gamma);
CaseOptimum case2_optimum();

// (sin φ1, sin φ2, sin φ3) at equilibrium radius rho, using φ3 = π/2 − φ1 − φ2.
// Requires 2ρ > 1 ≥ t > 0.
std::array<double, 3> case3_sin_phis(double t, double rho);

// cos γ of the lattice (t, γ) whose equilibrium radius is rho in Case 3.
double case3_cos_gamma(double t, double rho);

// Case 3 probability as a function of (t, ρ_L), combining case3_sin_phis and
// case3_cos_gamma. Returns NaN where |cos γ| > 1.
double case3_probability(double t, double rho);

CriticalRoots case3_critical_roots();
CaseOptimum case3_optimum();

}  // namespace exactone::closed_forms
