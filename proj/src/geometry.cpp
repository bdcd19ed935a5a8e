#include "exactone/geometry.hpp"

#include <algorithm>
#include <numbers>
#include <optional>
#include <tuple>

namespace exactone {

namespace {

bool approx_le(double x, double y) { return x <= y * (1.0 + kRelTol); }

bool approx_eq(double x, double y) {
  return std::abs(x - y) <= kRelTol * std::max(std::abs(x), std::abs(y));
}

// Lagrange–Gauss: afterwards ‖a‖ ≤ ‖b‖ and |⟨a,b⟩| ≤ ‖a‖²/2.
LatticeBasis gauss_reduce(Vec2 a, Vec2 b) {
  if (a.norm2() > b.norm2()) std::swap(a, b);
  for (int iter = 0; iter < 10000; ++iter) {
    const double mu = std::round(dot(a, b) / a.norm2());
    if (mu == 0.0) break;
    b = b - mu * a;
    if (b.norm2() >= a.norm2()) break;
    std::swap(a, b);
  }
  return {a, b};
}

// Sort key for canonical selection: lengths compare with relative tolerance,
// then polar angle breaks ties.
bool key_less(Vec2 u, Vec2 v) {
  const double lu = u.norm();
  const double lv = v.norm();
  if (!approx_eq(lu, lv)) return lu < lv;
  return polar_angle(u) < polar_angle(v);
}

}  // namespace

double polar_angle(Vec2 v) {
  double angle = std::atan2(v.y, v.x);
  if (angle < 0.0) angle += 2.0 * std::numbers::pi;
  return angle;
}

ReducedBasis::ReducedBasis(Vec2 a, Vec2 b) : a_(a), b_(b) {
  len_a_ = a_.norm();
  len_b_ = std::max(b_.norm(), len_a_);
  len_c_ = std::max((a_ - b_).norm(), len_b_);
  gamma_ = std::atan2(std::abs(cross(a_, b_)), dot(a_, b_));
}

bool ReducedBasis::is_rectangular() const {
  return std::abs(dot(a_, b_)) <= kRelTol * len_a_ * len_b_;
}

ReducedBasis reduce_basis(const LatticeBasis& basis) {
  if (!basis.a.finite() || !basis.b.finite()) {
    throw DegenerateBasisError("lattice basis has non-finite components");
  }
  const double det = cross(basis.a, basis.b);
  if (!(std::abs(det) > 1e-12 * basis.a.norm() * basis.b.norm())) {
    throw DegenerateBasisError("lattice basis vectors are linearly dependent");
  }

  auto [a, b] = gauss_reduce(basis.a, basis.b);
  if (dot(a, b) < 0.0) b = -b;

  // Every vector of length ≤ ‖c‖ that can appear in a reduced pair. ±(a+b)
  // is included so the candidate set is the same for any reduced pair of the
  // lattice, including the rectangular case where ‖a+b‖ = ‖a−b‖.
  const std::array<Vec2, 8> candidates = {a, -a, b, -b, a - b, b - a, a + b, -a - b};
  const double abs_det = std::abs(cross(a, b));

  std::optional<std::pair<Vec2, Vec2>> best;
  for (Vec2 u : candidates) {
    for (Vec2 v : candidates) {
      if (!approx_eq(std::abs(cross(u, v)), abs_det)) continue;
      if (dot(u, v) < 0.0) continue;
      const double lu = u.norm();
      const double lv = v.norm();
      if (!approx_le(lu, lv) || !approx_le(lv, (u - v).norm())) continue;
      if (!best || key_less(u, best->first) ||
          (!key_less(best->first, u) && key_less(v, best->second))) {
        best = std::pair{u, v};
      }
    }
  }
  if (!best) best = std::pair{a, b};
  return ReducedBasis(best->first, best->second);
}

ReducedBasis lattice_from_params(double t, double gamma) {
  if (!std::isfinite(t) || !std::isfinite(gamma) || !(t > 0.0) ||
      !approx_le(t, 1.0)) {
    throw std::domain_error("lattice parameters require 0 < t <= 1");
  }
  const double gamma_lo = std::acos(std::min(t, 1.0) / 2.0);
  constexpr double half_pi = std::numbers::pi / 2.0;
  if (gamma < gamma_lo * (1.0 - kRelTol) || gamma > half_pi * (1.0 + kRelTol)) {
    throw std::domain_error(
        "lattice parameters require arccos(t/2) <= gamma <= pi/2");
  }
  gamma = std::clamp(gamma, gamma_lo, half_pi);
  // cos of the double nearest π/2 is 6e-17, not 0.
  const Vec2 b = gamma == half_pi ? Vec2{0.0, 1.0} : Vec2{std::cos(gamma), std::sin(gamma)};
  return ReducedBasis(Vec2{std::min(t, 1.0), 0.0}, b);
}

ReducedBasis scaled(const ReducedBasis& rb, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw std::domain_error("scale factor must be positive and finite");
  }
  return reduce_basis({rb.a() * s, rb.b() * s});
}

double det_lattice(const ReducedBasis& rb) {
  return rb.lenA() * rb.lenB() * std::sin(rb.gamma());
}

RadiiProfile radii(const ReducedBasis& rb) {
  const double triangle_area = det_lattice(rb) / 2.0;
  return {rb.lenA() / 2.0,
          rb.lenA() * rb.lenB() * rb.lenC() / (4.0 * triangle_area)};
}

std::array<Vec2, 6> relevant_vectors(const ReducedBasis& rb) {
  std::array<Vec2, 6> vs = {rb.a(), rb.b(), rb.c(), -rb.a(), -rb.b(), -rb.c()};
  std::sort(vs.begin(), vs.end(),
            [](Vec2 u, Vec2 v) { return polar_angle(u) < polar_angle(v); });
  return vs;
}

namespace {

// Circumcenter of the triangle 0, p, q.
Vec2 circumcenter(Vec2 p, Vec2 q) {
  const double d = 2.0 * cross(p, q);
  const double pp = p.norm2();
  const double qq = q.norm2();
  return {(q.y * pp - p.y * qq) / d, (p.x * qq - q.x * pp) / d};
}

}  // namespace

VoronoiCell voronoi_cell(const ReducedBasis& rb) {
  VoronoiCell cell;
  if (rb.is_rectangular()) {
    const Vec2 ha = rb.a() * 0.5;
    const Vec2 hb = rb.b() * 0.5;
    cell.vertices = {ha + hb, -ha + hb, -ha - hb, ha - hb};
  } else {
    const auto vs = relevant_vectors(rb);
    for (std::size_t k = 0; k < vs.size(); ++k) {
      cell.vertices.push_back(circumcenter(vs[k], vs[(k + 1) % vs.size()]));
    }
  }
  std::sort(cell.vertices.begin(), cell.vertices.end(),
            [](Vec2 u, Vec2 v) { return polar_angle(u) < polar_angle(v); });
  return cell;
}

double VoronoiCell::area() const {
  double twice = 0.0;
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    twice += cross(vertices[k], vertices[(k + 1) % vertices.size()]);
  }
  return twice / 2.0;
}

std::vector<Vec2> neighbors_within(const ReducedBasis& rb, double dist) {
  std::vector<Vec2> out;
  if (!(dist >= 0.0)) return out;
  const double limit = dist * (1.0 + kRelTol);
  // |i| = |⟨p, a*⟩| ≤ ‖p‖‖a*‖ with ‖a*‖ = ‖b‖/det, similarly for j.
  const double det = det_lattice(rb);
  const auto imax = static_cast<long>(std::floor(limit * rb.lenB() / det)) + 1;
  const auto jmax = static_cast<long>(std::floor(limit * rb.lenA() / det)) + 1;
  for (long i = -imax; i <= imax; ++i) {
    for (long j = -jmax; j <= jmax; ++j) {
      if (i == 0 && j == 0) continue;
      const Vec2 p = static_cast<double>(i) * rb.a() + static_cast<double>(j) * rb.b();
      if (p.norm() <= limit) out.push_back(p);
    }
  }
  return out;
}

}  // namespace exactone
