#include "exactone/partial_disk.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace exactone {

namespace {

constexpr double kPi = std::numbers::pi;

void require_in_range(const ReducedBasis& rb, double rho) {
  const RadiiProfile r = radii(rb);
  if (!(rho >= r.r_pack * (1.0 - kRelTol) && rho <= r.r_cover * (1.0 + kRelTol))) {
    throw std::range_error("rho = " + std::to_string(rho) + " outside [r_pack, r_cover] = [" +
                           std::to_string(r.r_pack) + ", " + std::to_string(r.r_cover) + "]");
  }
}

double cut_angle(double len, double rho) {
  if (len >= 2.0 * rho) return 0.0;
  return 2.0 * std::acos(std::clamp(len / (2.0 * rho), 0.0, 1.0));
}

ArcAngles arcs_unchecked(const ReducedBasis& rb, double rho) {
  return {rho, cut_angle(rb.lenA(), rho), cut_angle(rb.lenB(), rho),
          cut_angle(rb.lenC(), rho)};
}

double segments_area(const ArcAngles& arcs) {
  const double r2 = arcs.rho * arcs.rho;
  return r2 * ((arcs.phi1 - std::sin(arcs.phi1)) + (arcs.phi2 - std::sin(arcs.phi2)) +
               (arcs.phi3 - std::sin(arcs.phi3)));
}

}  // namespace

ArcAngles arc_angles(const ReducedBasis& rb, double rho) {
  require_in_range(rb, rho);
  return arcs_unchecked(rb, rho);
}

double convex_total(const ArcAngles& arcs) { return 2.0 * kPi - 2.0 * arcs.sum(); }

double area_exactly_one(const ReducedBasis& rb, double rho) {
  const ArcAngles arcs = arc_angles(rb, rho);
  return kPi * rho * rho - 2.0 * segments_area(arcs);
}

double area_derivative(const ReducedBasis& rb, double rho) {
  return 2.0 * rho * (convex_total(arc_angles(rb, rho)) - kPi);
}

namespace {

// The equilibrium is solved in extended precision: next to a kink
// (ρ_L ≈ len_i/2) Σφ is so steep that the two doubles around the root can
// both miss π/2 by more than 1e-12.
using Wide = long double;

constexpr Wide kWidePi = std::numbers::pi_v<Wide>;

Wide wide_cut_angle(double len, Wide rho) {
  const Wide ratio = static_cast<Wide>(len) / (2.0L * rho);
  if (ratio >= 1.0L) return 0.0L;
  return 2.0L * std::acos(ratio);
}

struct WideArcs {
  Wide rho;
  std::array<Wide, 3> phi;

  Wide residual() const { return phi[0] + phi[1] + phi[2] - kWidePi / 2.0L; }
};

WideArcs wide_arcs(const ReducedBasis& rb, Wide rho) {
  return {rho, {wide_cut_angle(rb.lenA(), rho), wide_cut_angle(rb.lenB(), rho),
                wide_cut_angle(rb.lenC(), rho)}};
}

WideArcs equilibrium_arcs(const ReducedBasis& rb) {
  const RadiiProfile r = radii(rb);
  Wide lo = r.r_pack;
  Wide hi = r.r_cover;
  WideArcs at_lo = wide_arcs(rb, lo);
  WideArcs at_hi = wide_arcs(rb, hi);
  if (!(at_lo.residual() < 0.0L && at_hi.residual() > 0.0L)) {
    throw std::logic_error("equilibrium residual does not bracket a root");
  }
  // Σφ has sqrt-type kinks at ρ = len_i/2, so stay with bisection and run it
  // until the bracket is two adjacent values.
  for (int iter = 0; iter < 200; ++iter) {
    const Wide mid = lo + (hi - lo) / 2.0L;
    if (mid <= lo || mid >= hi) break;
    const WideArcs at_mid = wide_arcs(rb, mid);
    const Wide g = at_mid.residual();
    if (g == 0.0L) return at_mid;
    if (g < 0.0L) {
      lo = mid;
      at_lo = at_mid;
    } else {
      hi = mid;
      at_hi = at_mid;
    }
  }
  return std::abs(at_lo.residual()) <= std::abs(at_hi.residual()) ? at_lo : at_hi;
}

}  // namespace

double equilibrium_radius(const ReducedBasis& rb) {
  return static_cast<double>(equilibrium_arcs(rb).rho);
}

EquilibriumSolution equilibrium_probability(const ReducedBasis& rb) {
  const WideArcs root = equilibrium_arcs(rb);
  EquilibriumSolution sol;
  sol.rho_eq = static_cast<double>(root.rho);
  sol.arcs = {sol.rho_eq, static_cast<double>(root.phi[0]), static_cast<double>(root.phi[1]),
              static_cast<double>(root.phi[2])};
  sol.case_index = sol.arcs.positive_count();

  const Wide r2 = root.rho * root.rho;
  Wide segments = 0.0L;
  Wide sin_sum = 0.0L;
  for (Wide phi : root.phi) {
    segments += phi - std::sin(phi);
    sin_sum += std::sin(phi);
  }
  const Wide area = kWidePi * r2 - 2.0L * r2 * segments;
  const double det = det_lattice(rb);
  sol.area = static_cast<double>(area);
  sol.probability = static_cast<double>(area / det);
  // A(ρ) = 2ρ²Σ sin φ_i − 2ρ²(Σφ_i − π/2) for every ρ; the area route is
  // reported since it is flat in ρ at the root.
  const Wide via_sines = 2.0L * r2 * (sin_sum - root.residual()) / det;
  if (std::abs(static_cast<Wide>(sol.probability) - via_sines) > 1e-12L) {
    throw std::logic_error("equilibrium area and probability routes disagree");
  }
  return sol;
}

std::vector<ProfilePoint> area_profile(const ReducedBasis& rb, int n_points) {
  if (n_points < 2) throw std::invalid_argument("area_profile needs n_points >= 2");
  const RadiiProfile r = radii(rb);
  const double det = det_lattice(rb);
  std::vector<ProfilePoint> out;
  out.reserve(static_cast<std::size_t>(n_points));
  for (int k = 0; k < n_points; ++k) {
    const double rho = k + 1 == n_points
                           ? r.r_cover
                           : r.r_pack + (r.r_cover - r.r_pack) * k / (n_points - 1);
    const double area = area_exactly_one(rb, rho);
    out.push_back({rho, area, area / det});
  }
  return out;
}

bool cut_arcs_disjoint(const ReducedBasis& rb, double rho) {
  const ArcAngles arcs = arcs_unchecked(rb, rho);
  const auto half_angle = [&](Vec2 v) {
    const double len = v.norm();
    if (len <= rb.lenA() * (1.0 + kRelTol)) return arcs.phi1 / 2.0;
    if (len <= rb.lenB() * (1.0 + kRelTol)) return arcs.phi2 / 2.0;
    return arcs.phi3 / 2.0;
  };
  const auto vs = relevant_vectors(rb);
  for (std::size_t k = 0; k < vs.size(); ++k) {
    const Vec2 u = vs[k];
    const Vec2 v = vs[(k + 1) % vs.size()];
    double gap = polar_angle(v) - polar_angle(u);
    if (gap < 0.0) gap += 2.0 * kPi;
    // Touching is allowed: at ρ = r_cover the arcs meet at the Voronoi vertices.
    if (half_angle(u) + half_angle(v) > gap * (1.0 + 1e-9) + 1e-12) return false;
  }
  return true;
}

double segments_disjoint_limit(const ReducedBasis& rb) {
  // B(0,ρ) ∩ B(u,ρ) ∩ B(v,ρ) is non-empty exactly when ρ reaches the radius
  // of the smallest disk enclosing 0, u, v.
  const auto enclosing = [](Vec2 u, Vec2 v) {
    const double uu = u.norm2();
    const double vv = v.norm2();
    const double ww = (u - v).norm2();
    const double longest = std::max({uu, vv, ww});
    if (2.0 * longest >= uu + vv + ww) return std::sqrt(longest) / 2.0;  // not acute
    return std::sqrt(uu * vv * ww) / (2.0 * std::abs(cross(u, v)));
  };
  const auto vs = relevant_vectors(rb);
  double limit = radii(rb).r_cover;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) limit = std::min(limit, enclosing(vs[i], vs[j]));
  }
  return limit;
}

}  // namespace exactone
