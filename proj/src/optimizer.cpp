#include "exactone/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <thread>

#include "exactone/closed_forms.hpp"

namespace exactone::optimizer {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

double lerp(double lo, double hi, int k, int steps) {
  if (k + 1 == steps) return hi;
  return lo + (hi - lo) * k / (steps - 1);
}

}  // namespace

SweepRecord evaluate(double t, double gamma) {
  const EquilibriumSolution sol = equilibrium_probability(lattice_from_params(t, gamma));
  return {t,
          gamma,
          sol.rho_eq,
          sol.arcs.phi1,
          sol.arcs.phi2,
          sol.arcs.phi3,
          sol.case_index,
          sol.area,
          sol.probability};
}

std::vector<SweepRecord> sweep(int t_steps, int gamma_steps, int workers) {
  if (t_steps < 2 || gamma_steps < 2) throw std::invalid_argument("sweep needs at least 2 steps per axis");
  std::vector<std::vector<SweepRecord>> rows(static_cast<std::size_t>(t_steps));
  const auto fill_row = [&](int i) {
    const double t = lerp(kSweepTMin, 1.0, i, t_steps);
    const double gamma_lo = std::acos(t / 2.0);
    auto& row = rows[static_cast<std::size_t>(i)];
    for (int j = 0; j < gamma_steps; ++j) {
      try {
        row.push_back(evaluate(t, lerp(gamma_lo, kHalfPi, j, gamma_steps)));
      } catch (const std::domain_error&) {
        // infeasible (t, γ): skipped
      }
    }
  };
  workers = std::clamp(workers, 1, t_steps);
  if (workers == 1) {
    for (int i = 0; i < t_steps; ++i) fill_row(i);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        for (int i = w; i < t_steps; i += workers) fill_row(i);
      });
    }
    for (auto& th : threads) th.join();
  }
  std::vector<SweepRecord> out;
  for (auto& row : rows) out.insert(out.end(), row.begin(), row.end());
  return out;
}

int predicted_case(double t, double gamma) {
  if (t <= kInvSqrt2) return 1;
  return gamma >= closed_forms::case2_gamma_min(t) ? 2 : 3;
}

RegionSummary case_regions(const std::vector<SweepRecord>& records) {
  if (records.empty()) throw std::invalid_argument("case_regions needs a non-empty sweep");
  RegionSummary summary;
  for (const SweepRecord& r : records) {
    if (summary.columns.empty() || summary.columns.back().t != r.t) {
      summary.columns.push_back({r.t, {}, 0.0});
    }
    ColumnRegions& col = summary.columns.back();
    if (col.intervals.empty() || col.intervals.back().case_index != r.case_index) {
      col.intervals.push_back({r.case_index, r.gamma, r.gamma});
    } else {
      col.intervals.back().gamma_hi = r.gamma;
    }
  }

  double t_step = 1.0;
  for (std::size_t k = 1; k < summary.columns.size(); ++k) {
    t_step = std::min(t_step, summary.columns[k].t - summary.columns[k - 1].t);
  }
  for (ColumnRegions& col : summary.columns) {
    const double lo = std::acos(col.t / 2.0);
    std::size_t count = 0;
    for (const SweepRecord& r : records) count += r.t == col.t ? 1 : 0;
    col.gamma_step = count > 1 ? (kHalfPi - lo) / static_cast<double>(count - 1) : 0.0;
  }

  std::size_t c = 0;
  for (const SweepRecord& r : records) {
    while (summary.columns[c].t != r.t) ++c;
    const int expected = predicted_case(r.t, r.gamma);
    if (expected == r.case_index) continue;
    const bool near_t_boundary = std::abs(r.t - kInvSqrt2) <= t_step;
    const bool near_gamma_boundary =
        r.t > kInvSqrt2 * (1.0 - kRelTol) &&
        std::abs(r.gamma - closed_forms::case2_gamma_min(std::max(r.t, kInvSqrt2))) <=
            summary.columns[c].gamma_step;
    if (!near_t_boundary && !near_gamma_boundary) summary.inconsistent.push_back(r);
  }
  return summary;
}

Restriction parse_restriction(const std::string& name) {
  if (name.empty() || name == "none" || name == "all") return Restriction::kNone;
  if (name == "case1") return Restriction::kCase1;
  if (name == "case2") return Restriction::kCase2;
  if (name == "rect" || name == "rectangular") return Restriction::kRectangular;
  throw std::invalid_argument("unknown restriction '" + name + "' (expected none, case1, case2, rect)");
}

std::string to_string(Restriction r) {
  switch (r) {
    case Restriction::kNone: return "none";
    case Restriction::kCase1: return "case1";
    case Restriction::kCase2: return "case2";
    case Restriction::kRectangular: return "rect";
  }
  return "none";
}

namespace {

// Restricted domain in coordinates (t, s) ∈ [t_lo, t_hi] × [0, 1], with
// γ = gamma_lo(t) + s·(gamma_hi − gamma_lo(t)).
struct Domain {
  double t_lo;
  double t_hi;
  std::function<double(double)> gamma_lo;
  double gamma_hi;

  double gamma(double t, double s) const {
    const double lo = gamma_lo(t);
    return s >= 1.0 ? gamma_hi : lo + s * (gamma_hi - lo);
  }
};

Domain make_domain(Restriction restriction) {
  const auto hexagonal_side = [](double t) { return std::acos(t / 2.0); };
  switch (restriction) {
    case Restriction::kCase1:
      return {kSweepTMin, kInvSqrt2, hexagonal_side, kHalfPi};
    case Restriction::kCase2:
      return {kInvSqrt2, 1.0, [](double t) { return closed_forms::case2_gamma_min(t); }, kHalfPi};
    case Restriction::kRectangular:
      return {kSweepTMin, 1.0, [](double) { return kHalfPi; }, kHalfPi};
    case Restriction::kNone:
      break;
  }
  return {kSweepTMin, 1.0, hexagonal_side, kHalfPi};
}

}  // namespace

Optimum global_optimize(int coarse, double refine_tol, Restriction restriction) {
  if (coarse < 2) throw std::invalid_argument("global_optimize needs coarse >= 2");
  if (!(refine_tol > 0.0)) throw std::invalid_argument("global_optimize needs refine_tol > 0");
  const Domain dom = make_domain(restriction);
  Optimum opt;
  const auto objective = [&](double t, double s) {
    ++opt.evaluations;
    return evaluate(t, dom.gamma(t, s));
  };

  double best_t = dom.t_lo;
  double best_s = 0.0;
  SweepRecord best = objective(best_t, best_s);
  for (int i = 0; i < coarse; ++i) {
    const double t = lerp(dom.t_lo, dom.t_hi, i, coarse);
    for (int j = 0; j < coarse; ++j) {
      const double s = lerp(0.0, 1.0, j, coarse);
      const SweepRecord rec = objective(t, s);
      if (rec.probability > best.probability) {
        best = rec;
        best_t = t;
        best_s = s;
      }
    }
  }

  // Compass search: the objective has kinks on the case boundaries, so no
  // gradients are used.
  double step_t = (dom.t_hi - dom.t_lo) / coarse;
  double step_s = 1.0 / coarse;
  constexpr int kMaxEvaluations = 200000;
  while (std::max(step_t, step_s) >= refine_tol) {
    if (opt.evaluations > kMaxEvaluations) {
      throw RefinementStallError("compass search did not reach the step tolerance");
    }
    const std::array<std::pair<double, double>, 4> moves = {
        std::pair{std::min(best_t + step_t, dom.t_hi), best_s},
        std::pair{std::max(best_t - step_t, dom.t_lo), best_s},
        std::pair{best_t, std::min(best_s + step_s, 1.0)},
        std::pair{best_t, std::max(best_s - step_s, 0.0)}};
    bool improved = false;
    for (const auto& [t, s] : moves) {
      if (t == best_t && s == best_s) continue;
      const SweepRecord rec = objective(t, s);
      if (rec.probability > best.probability) {
        opt.objective_gap_bound = std::max(opt.objective_gap_bound, rec.probability - best.probability);
        best = rec;
        best_t = t;
        best_s = s;
        improved = true;
      }
    }
    if (!improved) {
      step_t /= 2.0;
      step_s /= 2.0;
    }
  }
  opt.record = best;
  opt.refined = true;
  return opt;
}

double quadrangle_upper_curve(double t) {
  const double gamma_max = closed_forms::case2_gamma_min(t);
  const double c = std::sqrt(t * t + 1.0 - 2.0 * t * std::cos(gamma_max));
  return c / (2.0 * std::sin(gamma_max));
}

double quadrangle_upper_line(double t) {
  const double lo = quadrangle_upper_curve(kInvSqrt2);
  const double hi = quadrangle_upper_curve(1.0);
  return lo + (hi - lo) * (t - kInvSqrt2) / (1.0 - kInvSqrt2);
}

namespace {

constexpr double kFdStep = 1e-6;
constexpr double kGradTol = 1e-8;

struct Point {
  double t;
  double rho;
};

// Corners in counterclockwise order starting at the bottom left.
std::array<Point, 4> quadrangle_corners() {
  return {Point{kInvSqrt2, 0.5}, Point{1.0, 0.5}, Point{1.0, quadrangle_upper_line(1.0)},
          Point{kInvSqrt2, quadrangle_upper_line(kInvSqrt2)}};
}

Point on_edge(int edge, double s) {
  const auto corners = quadrangle_corners();
  const Point p = corners[static_cast<std::size_t>(edge)];
  const Point q = corners[static_cast<std::size_t>((edge + 1) % 4)];
  if (edge == 2) {
    const double t = p.t + s * (q.t - p.t);
    return {t, quadrangle_upper_line(t)};
  }
  return {p.t + s * (q.t - p.t), p.rho + s * (q.rho - p.rho)};
}

double objective(Point p) { return closed_forms::case3_probability(p.t, p.rho); }

// Derivative of the objective along an edge, central differences clamped to
// the edge.
double edge_slope(int edge, double s) {
  const double lo = std::max(s - kFdStep, 0.0);
  const double hi = std::min(s + kFdStep, 1.0);
  return (objective(on_edge(edge, hi)) - objective(on_edge(edge, lo))) / (hi - lo);
}

Location edge_location(int edge) {
  constexpr std::array<Location, 4> kEdges = {Location::kBottomEdge, Location::kRightEdge,
                                              Location::kTopEdge, Location::kLeftEdge};
  return kEdges[static_cast<std::size_t>(edge)];
}

bool strictly_inside(Point p, double margin) {
  return p.t > kInvSqrt2 + margin && p.t < 1.0 - margin && p.rho > 0.5 + margin &&
         p.rho < quadrangle_upper_line(p.t) - margin;
}

std::array<double, 2> gradient(Point p) {
  const double h = kFdStep;
  return {(objective({p.t + h, p.rho}) - objective({p.t - h, p.rho})) / (2.0 * h),
          (objective({p.t, p.rho + h}) - objective({p.t, p.rho - h})) / (2.0 * h)};
}

// Newton iteration on the finite-difference gradient. Returns true and the
// stationary point if it converges strictly inside the quadrangle.
bool newton_stationary(Point start, Point& out, std::array<double, 3>& hessian) {
  Point p = start;
  constexpr double h = 1e-4;
  for (int iter = 0; iter < 60; ++iter) {
    const auto g = gradient(p);
    if (!std::isfinite(g[0]) || !std::isfinite(g[1])) return false;
    const auto gt_plus = gradient({p.t + h, p.rho});
    const auto gt_minus = gradient({p.t - h, p.rho});
    const auto gr_plus = gradient({p.t, p.rho + h});
    const auto gr_minus = gradient({p.t, p.rho - h});
    const double htt = (gt_plus[0] - gt_minus[0]) / (2.0 * h);
    const double hrr = (gr_plus[1] - gr_minus[1]) / (2.0 * h);
    const double htr = 0.5 * ((gt_plus[1] - gt_minus[1]) + (gr_plus[0] - gr_minus[0])) / (2.0 * h);
    hessian = {htt, htr, hrr};
    if (std::hypot(g[0], g[1]) < kGradTol) {
      out = p;
      return strictly_inside(p, 1e-6);
    }
    const double det = htt * hrr - htr * htr;
    if (!std::isfinite(det) || std::abs(det) < 1e-14) return false;
    double dt = -(hrr * g[0] - htr * g[1]) / det;
    double dr = -(htt * g[1] - htr * g[0]) / det;
    Point next{p.t + dt, p.rho + dr};
    for (int k = 0; k < 30 && !strictly_inside(next, 2e-4); ++k) {
      dt /= 2.0;
      dr /= 2.0;
      next = {p.t + dt, p.rho + dr};
    }
    if (!strictly_inside(next, 2e-4)) return false;
    p = next;
  }
  return false;
}

}  // namespace

QuadrangleScan quadrangle_scan(int n) {
  if (n < 4) throw std::invalid_argument("quadrangle_scan needs n >= 4");
  struct Sample {
    int edge;
    double s;
    double value;
  };
  std::vector<Sample> ring;
  ring.reserve(static_cast<std::size_t>(4 * n));
  for (int edge = 0; edge < 4; ++edge) {
    for (int k = 0; k < n; ++k) {
      const double s = static_cast<double>(k) / n;
      ring.push_back({edge, s, objective(on_edge(edge, s))});
    }
  }

  QuadrangleScan scan;
  const std::size_t m = ring.size();
  for (std::size_t k = 0; k < m; ++k) {
    const double prev = ring[(k + m - 1) % m].value;
    const double next = ring[(k + 1) % m].value;
    const Sample& cur = ring[k];
    const bool is_max = cur.value > prev && cur.value > next;
    const bool is_min = cur.value < prev && cur.value < next;
    if (!is_max && !is_min) continue;

    CriticalPoint cp;
    cp.kind = is_max ? Extremum::kMaximum : Extremum::kMinimum;
    if (cur.s == 0.0) {
      const Point p = on_edge(cur.edge, 0.0);
      cp.t = p.t;
      cp.rho = p.rho;
      cp.probability = cur.value;
      cp.where = Location::kCorner;
    } else {
      // Root of the edge slope between the neighbouring samples.
      double lo = cur.s - 1.0 / n;
      double hi = cur.s + 1.0 / n;
      const double sign_lo = is_max ? 1.0 : -1.0;
      if (edge_slope(cur.edge, lo) * sign_lo > 0.0 && edge_slope(cur.edge, hi) * sign_lo < 0.0) {
        for (int iter = 0; iter < 60 && hi - lo > 1e-13; ++iter) {
          const double mid = 0.5 * (lo + hi);
          if (edge_slope(cur.edge, mid) * sign_lo > 0.0) {
            lo = mid;
          } else {
            hi = mid;
          }
        }
      } else {
        lo = hi = cur.s;
      }
      const Point p = on_edge(cur.edge, 0.5 * (lo + hi));
      cp.t = p.t;
      cp.rho = p.rho;
      cp.probability = objective(p);
      cp.where = edge_location(cur.edge);
    }
    scan.boundary.push_back(cp);
  }

  // Interior stationary points from a grid of Newton starts.
  constexpr int kStarts = 6;
  for (int i = 1; i <= kStarts; ++i) {
    for (int j = 1; j <= kStarts; ++j) {
      const double t = kInvSqrt2 + (1.0 - kInvSqrt2) * i / (kStarts + 1);
      const double rho = 0.5 + (quadrangle_upper_line(t) - 0.5) * j / (kStarts + 1);
      Point found{};
      std::array<double, 3> hess{};
      if (!newton_stationary({t, rho}, found, hess)) continue;
      const bool duplicate = std::any_of(scan.interior.begin(), scan.interior.end(), [&](const CriticalPoint& c) {
        return std::hypot(c.t - found.t, c.rho - found.rho) < 1e-6;
      });
      if (duplicate) continue;
      const double det = hess[0] * hess[2] - hess[1] * hess[1];
      Extremum kind = Extremum::kSaddle;
      if (det > 0.0) kind = hess[0] < 0.0 ? Extremum::kMaximum : Extremum::kMinimum;
      scan.interior.push_back({found.t, found.rho, objective(found), kind, Location::kInterior});
    }
  }

  for (int k = 0; k <= n; ++k) {
    const double t = kInvSqrt2 + (1.0 - kInvSqrt2) * k / n;
    const double line = quadrangle_upper_line(t);
    const double curve = quadrangle_upper_curve(t);
    scan.max_radius_gap = std::max(scan.max_radius_gap, line - curve);
    const double gap = std::abs(objective({t, line}) - objective({t, curve}));
    if (std::isfinite(gap)) scan.max_probability_gap = std::max(scan.max_probability_gap, gap);
  }
  return scan;
}

std::string to_string(Extremum e) {
  switch (e) {
    case Extremum::kMaximum: return "max";
    case Extremum::kMinimum: return "min";
    case Extremum::kSaddle: return "saddle";
  }
  return "saddle";
}

std::string to_string(Location l) {
  switch (l) {
    case Location::kCorner: return "corner";
    case Location::kBottomEdge: return "bottom";
    case Location::kRightEdge: return "right";
    case Location::kTopEdge: return "top";
    case Location::kLeftEdge: return "left";
    case Location::kInterior: return "interior";
  }
  return "interior";
}

}  // namespace exactone::optimizer
