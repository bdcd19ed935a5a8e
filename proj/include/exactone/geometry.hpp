#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace exactone {

// Relative tolerance for length and angle comparisons.
inline constexpr double kRelTol = 1e-12;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr bool operator==(const Vec2&) const = default;

  double norm() const { return std::hypot(x, y); }
  constexpr double norm2() const { return x * x + y * y; }
  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }
constexpr double dot(Vec2 u, Vec2 v) { return u.x * v.x + u.y * v.y; }
constexpr double cross(Vec2 u, Vec2 v) { return u.x * v.y - u.y * v.x; }

// Angle of v measured counterclockwise from the positive x-axis, in [0, 2π).
double polar_angle(Vec2 v);

class DegenerateBasisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Two generators of the lattice {i·a + j·b : i, j ∈ Z}.
struct LatticeBasis {
  Vec2 a;
  Vec2 b;
};

// Canonical non-obtuse generators of a planar lattice.
//
// lenA ≤ lenB ≤ lenC where c = a − b, ⟨a, b⟩ ≥ 0, and gamma is the unsigned
// angle between a and b in (0, π/2]. The triangle 0, a, b is non-obtuse, so
// ±a, ±b, ±c are the Voronoi-relevant vectors of the lattice.
class ReducedBasis {
 public:
  Vec2 a() const { return a_; }
  Vec2 b() const { return b_; }
  Vec2 c() const { return a_ - b_; }
  double lenA() const { return len_a_; }
  double lenB() const { return len_b_; }
  double lenC() const { return len_c_; }
  double gamma() const { return gamma_; }

  // Edge lengths in order (lenA, lenB, lenC).
  std::array<double, 3> lengths() const { return {len_a_, len_b_, len_c_}; }

  // True for the rectangular limit gamma = π/2, where the Voronoi cell
  // degenerates from a hexagon to a rectangle.
  bool is_rectangular() const;

 private:
  friend ReducedBasis reduce_basis(const LatticeBasis&);
  friend ReducedBasis lattice_from_params(double, double);

  ReducedBasis(Vec2 a, Vec2 b);

  Vec2 a_;
  Vec2 b_;
  double len_a_ = 0.0;
  double len_b_ = 0.0;
  double len_c_ = 0.0;
  double gamma_ = 0.0;
};

struct RadiiProfile {
  double r_pack = 0.0;   // largest ρ with B(0, ρ) inside the Voronoi cell
  double r_cover = 0.0;  // smallest ρ with the Voronoi cell inside B(0, ρ)
};

// Voronoi cell of the origin, counterclockwise. Six vertices for a primitive
// lattice, four in the rectangular case.
struct VoronoiCell {
  std::vector<Vec2> vertices;

  double area() const;
};

// Lagrange–Gauss reduction followed by canonical tie-breaking on
// (length, polar angle). Throws DegenerateBasisError if the generators are
// (numerically) dependent or not finite.
ReducedBasis reduce_basis(const LatticeBasis& basis);

// Lattice with a = (t, 0), b = (cos γ, sin γ), i.e. ‖b‖ = 1 and
// ‖a‖/‖b‖ = t. Requires 0 < t ≤ 1 and arccos(t/2) ≤ γ ≤ π/2; throws
// std::domain_error otherwise.
ReducedBasis lattice_from_params(double t, double gamma);

// Same lattice scaled by s > 0.
ReducedBasis scaled(const ReducedBasis& rb, double s);

// Area of the fundamental domain, ‖a‖‖b‖ sin γ.
double det_lattice(const ReducedBasis& rb);

RadiiProfile radii(const ReducedBasis& rb);

VoronoiCell voronoi_cell(const ReducedBasis& rb);

// All nonzero lattice points p with ‖p‖ ≤ dist (relative slack kRelTol).
// Index bounds come from the dual basis, so the enumeration is complete.
std::vector<Vec2> neighbors_within(const ReducedBasis& rb, double dist);

// ±a, ±b, ±c sorted by polar angle. These are the Voronoi-relevant vectors
// of a primitive lattice; in the rectangular case only ±a, ±b bound the cell.
std::array<Vec2, 6> relevant_vectors(const ReducedBasis& rb);

}  // namespace exactone
