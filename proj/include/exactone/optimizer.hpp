#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "exactone/partial_disk.hpp"

// Search over the two-parameter family of lattices with ‖b‖ = 1:
// t = ‖a‖/‖b‖ ∈ (0, 1] and arccos(t/2) ≤ γ ≤ π/2.
namespace exactone::optimizer {

// Sweeps start here; thinner lattices have probability → 0.
inline constexpr double kSweepTMin = 0.05;

struct SweepRecord {
  double t = 0.0;
  double gamma = 0.0;
  double rho_eq = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
  double phi3 = 0.0;
  int case_index = 0;
  double area = 0.0;
  double probability = 0.0;
};

// Equilibrium data for the lattice (t, γ).
SweepRecord evaluate(double t, double gamma);

// t_steps values of t uniform in [kSweepTMin, 1]; for each, gamma_steps values
// of γ uniform in [arccos(t/2), π/2], endpoints included. Ordered by (t, γ).
std::vector<SweepRecord> sweep(int t_steps, int gamma_steps, int workers = 1);

// γ intervals occupied by one case within a single t column.
struct CaseInterval {
  int case_index = 0;
  double gamma_lo = 0.0;
  double gamma_hi = 0.0;
};

struct ColumnRegions {
  double t = 0.0;
  std::vector<CaseInterval> intervals;  // in γ order
  double gamma_step = 0.0;              // grid spacing in this column
};

struct RegionSummary {
  std::vector<ColumnRegions> columns;
  // Records whose case differs from the closed-form prediction (case 1 iff
  // t ≤ 1/√2, case 2/3 split at case2_gamma_min(t)) by more than one grid
  // cell from the boundary. Empty when the sweep is region-consistent.
  std::vector<SweepRecord> inconsistent;
};

// Case of (t, γ) predicted by the closed-form region boundaries.
int predicted_case(double t, double gamma);

RegionSummary case_regions(const std::vector<SweepRecord>& records);

enum class Restriction {
  kNone,         // full domain
  kCase1,        // t ≤ 1/√2
  kCase2,        // t ≥ 1/√2 and γ ≥ case2_gamma_min(t)
  kRectangular,  // γ = π/2
};

Restriction parse_restriction(const std::string& name);
std::string to_string(Restriction r);

struct Optimum {
  SweepRecord record;
  bool refined = false;
  double objective_gap_bound = 0.0;  // largest single improvement during refinement
  int evaluations = 0;
};

class RefinementStallError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Coarse grid over the (restricted) domain, then a derivative-free compass
// search with shrinking steps from the best grid point, until the step falls
// below refine_tol.
Optimum global_optimize(int coarse, double refine_tol, Restriction restriction = Restriction::kNone);

// Search of the Case 3 objective P(t, ρ) over the quadrangle
// 1/√2 ≤ t ≤ 1, 1/2 ≤ ρ ≤ upper(t), where upper is the straight line between
// the covering radii of the lattices (t, case2_gamma_min(t)) at the two ends.
enum class Extremum { kMaximum, kMinimum, kSaddle };

enum class Location { kCorner, kBottomEdge, kRightEdge, kTopEdge, kLeftEdge, kInterior };

struct CriticalPoint {
  double t = 0.0;
  double rho = 0.0;
  double probability = 0.0;
  Extremum kind = Extremum::kMaximum;
  Location where = Location::kInterior;
};

struct QuadrangleScan {
  std::vector<CriticalPoint> boundary;  // cyclic order: bottom, right, top, left
  std::vector<CriticalPoint> interior;  // stationary points strictly inside
  // Top edge compared against the exact curve ρ = ‖c‖/(2 sin γ_max(t)).
  double max_radius_gap = 0.0;       // max over t of line − curve
  double max_probability_gap = 0.0;  // max over t of |P(line) − P(curve)|
};

// Covering radius of the lattice (t, case2_gamma_min(t)).
double quadrangle_upper_curve(double t);
double quadrangle_upper_line(double t);

QuadrangleScan quadrangle_scan(int n);

std::string to_string(Extremum e);
std::string to_string(Location l);

}  // namespace exactone::optimizer
