#include "exactone/closed_forms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "exactone/geometry.hpp"

namespace exactone::closed_forms {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
constexpr double kHalfPi = std::numbers::pi / 2.0;

void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

bool gamma_in_domain(double t, double gamma, double gamma_lo) {
  return gamma >= gamma_lo * (1.0 - kRelTol) && gamma <= kHalfPi * (1.0 + kRelTol) &&
         gamma >= std::acos(t / 2.0) * (1.0 - kRelTol);
}

}  // namespace

double case1_probability(double t, double gamma) {
  require(t > 0.0 && t <= kInvSqrt2 * (1.0 + kRelTol), "case 1 requires 0 < t <= 1/sqrt(2)");
  require(gamma_in_domain(t, gamma, 0.0), "case 1 requires arccos(t/2) <= gamma <= pi/2");
  return t / std::sin(gamma);
}

CaseOptimum case1_optimum() {
  const double t = kInvSqrt2;
  const double gamma = std::acos(t / 2.0);
  return {1, t, gamma, t / kSqrt2, case1_probability(t, gamma)};
}

double case2_radius(double t) {
  require(t > kInvSqrt2 * (1.0 - kRelTol) && t <= 1.0 * (1.0 + kRelTol),
          "case 2 requires 1/sqrt(2) < t <= 1");
  return std::sqrt(0.5 * (t * t + 1.0 - kSqrt2 * t));
}

double case2_gamma_min(double t) {
  require(t > kInvSqrt2 * (1.0 - kRelTol) && t <= 1.0 * (1.0 + kRelTol),
          "case 2 requires 1/sqrt(2) < t <= 1");
  return std::acos(std::clamp(kSqrt2 - (t * t + 1.0) / (2.0 * t), -1.0, 1.0));
}

double case2_probability(double t, double gamma) {
  require(gamma_in_domain(t, gamma, case2_gamma_min(t)),
          "case 2 requires case2_gamma_min(t) <= gamma <= pi/2");
  return (2.0 * kSqrt2 * t - t * t - 1.0) / (t * std::sin(gamma));
}

CaseOptimum case2_optimum() {
  const double gamma = case2_gamma_min(1.0);
  return {2, 1.0, gamma, case2_radius(1.0), case2_probability(1.0, gamma)};
}

std::array<double, 3> case3_sin_phis(double t, double rho) {
  require(t > 0.0 && t <= 1.0 && 2.0 * rho > 1.0, "case 3 forms require 2*rho > 1 >= t > 0");
  const double r2 = rho * rho;
  const double root_a = std::sqrt(4.0 * r2 - t * t);
  const double root_b = std::sqrt(4.0 * r2 - 1.0);
  const double mixed = t * root_b + root_a;
  return {t * root_a / (2.0 * r2), root_b / (2.0 * r2), 1.0 - mixed * mixed / (8.0 * r2 * r2)};
}

double case3_cos_gamma(double t, double rho) {
  require(t > 0.0 && t <= 1.0 && 2.0 * rho >= 1.0, "case 3 forms require 2*rho > 1 >= t > 0");
  const double r2 = rho * rho;
  const double root_a = std::sqrt(4.0 * r2 - t * t);
  const double root_b = std::sqrt(4.0 * r2 - 1.0);
  return (t * t + 1.0 - 2.0 * r2) / (2.0 * t)
         - (1.0 - 2.0 * r2) / (4.0 * r2) * root_a
         - (t * t - 2.0 * r2) / (4.0 * r2 * t) * root_b;
}

double case3_probability(double t, double rho) {
  const double cos_gamma = case3_cos_gamma(t, rho);
  if (!(std::abs(cos_gamma) <= 1.0)) return std::numeric_limits<double>::quiet_NaN();
  // At 2ρ = 1 the case-3 sines degenerate continuously; evaluate the limit.
  const double r2 = rho * rho;
  const double root_a = std::sqrt(4.0 * r2 - t * t);
  const double root_b = std::sqrt(std::max(4.0 * r2 - 1.0, 0.0));
  const double mixed = t * root_b + root_a;
  const double sin_sum = t * root_a / (2.0 * r2) + root_b / (2.0 * r2) + 1.0 -
                         mixed * mixed / (8.0 * r2 * r2);
  const double sin_gamma = std::sqrt(1.0 - cos_gamma * cos_gamma);
  return 2.0 * r2 * sin_sum / (t * sin_gamma);
}

CriticalRoots case3_critical_roots() {
  const double c = 3.0 + 2.0 * kSqrt2;
  const double cbrt = std::cbrt(c);
  const double sqrt6 = std::sqrt(6.0);
  return {(sqrt6 - kSqrt2) / 2.0, 0.5 * std::sqrt(cbrt - 1.0 + 1.0 / cbrt),
          (sqrt6 + kSqrt2) / 2.0, c, true};
}

CaseOptimum case3_optimum() {
  const double rho = 1.0 / (2.0 * std::cos(std::numbers::pi / 12.0));
  return {3, 1.0, std::numbers::pi / 3.0, rho, case3_probability(1.0, rho)};
}

}  // namespace exactone::closed_forms
