#include "exactone/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>
#include <vector>

namespace exactone::oracle {

namespace {

// Lattice points (origin included) that can lie within rho of some point of
// the fundamental domain {u·a + v·b : u, v ∈ [0, 1)}. The farthest point of
// that parallelogram from 0 is a + b since γ ≤ π/2.
std::vector<Vec2> reachable_points(const ReducedBasis& rb, double rho) {
  const double reach = std::max({(rb.a() + rb.b()).norm(), rb.lenA(), rb.lenB()}) + rho;
  std::vector<Vec2> pts = neighbors_within(rb, reach);
  pts.push_back(Vec2{});
  return pts;
}

int cover_count(const std::vector<Vec2>& pts, Vec2 x, double rho2) {
  int count = 0;
  for (const Vec2& p : pts) {
    if ((x - p).norm2() <= rho2) ++count;
  }
  return count;
}

struct Tally {
  std::int64_t exactly_one = 0;
  std::int64_t cover_sum = 0;
  std::int64_t cover_sq_sum = 0;
};

// Splits [0, n) into `workers` contiguous blocks. Integer tallies make the
// merged result independent of the split.
template <class Body>
Tally run_partitioned(std::int64_t n, int workers, Body body) {
  workers = std::max(1, workers);
  if (workers == 1 || n < 2) return body(0, n);
  std::vector<Tally> parts(static_cast<std::size_t>(workers));
  std::vector<std::thread> threads;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t begin = n * w / workers;
    const std::int64_t end = n * (w + 1) / workers;
    threads.emplace_back([&, w, begin, end] { parts[static_cast<std::size_t>(w)] = body(begin, end); });
  }
  for (auto& th : threads) th.join();
  Tally total;
  for (const Tally& t : parts) {
    total.exactly_one += t.exactly_one;
    total.cover_sum += t.cover_sum;
    total.cover_sq_sum += t.cover_sq_sum;
  }
  return total;
}

Tally sample(const ReducedBasis& rb, double rho, std::int64_t n, std::uint64_t seed, int workers) {
  if (!(rho > 0.0)) throw std::invalid_argument("oracle requires rho > 0");
  if (n < 1) throw std::invalid_argument("oracle requires n >= 1");
  const std::vector<Vec2> pts = reachable_points(rb, rho);
  const CounterRng rng(seed);
  const double rho2 = rho * rho;
  return run_partitioned(n, workers, [&](std::int64_t begin, std::int64_t end) {
    Tally t;
    for (std::int64_t i = begin; i < end; ++i) {
      const auto k = static_cast<std::uint64_t>(i);
      const double u = rng.uniform(2 * k);
      const double v = rng.uniform(2 * k + 1);
      const int c = cover_count(pts, u * rb.a() + v * rb.b(), rho2);
      t.exactly_one += c == 1 ? 1 : 0;
      t.cover_sum += c;
      t.cover_sq_sum += static_cast<std::int64_t>(c) * c;
    }
    return t;
  });
}

}  // namespace

McEstimate mc_exactly_one(const ReducedBasis& rb, double rho, std::int64_t n, std::uint64_t seed,
                          int workers) {
  const Tally t = sample(rb, rho, n, seed, workers);
  const double nn = static_cast<double>(n);
  const double mean = static_cast<double>(t.exactly_one) / nn;
  return {mean, std::sqrt(mean * (1.0 - mean) / nn), n, seed};
}

McEstimate mc_cover_count(const ReducedBasis& rb, double rho, std::int64_t n, std::uint64_t seed,
                          int workers) {
  const Tally t = sample(rb, rho, n, seed, workers);
  const double nn = static_cast<double>(n);
  const double mean = static_cast<double>(t.cover_sum) / nn;
  const double var = n > 1 ? (static_cast<double>(t.cover_sq_sum) - nn * mean * mean) / (nn - 1.0)
                           : 0.0;
  return {mean, std::sqrt(std::max(var, 0.0) / nn), n, seed};
}

double grid_area_exactly_one(const ReducedBasis& rb, double rho, int resolution, int workers) {
  if (resolution < 16) throw std::invalid_argument("grid quadrature requires resolution >= 16");
  if (!(rho > 0.0)) throw std::invalid_argument("grid quadrature requires rho > 0");
  const std::vector<Vec2> pts = reachable_points(rb, rho);
  const double rho2 = rho * rho;
  const double h = 1.0 / resolution;
  const Tally t = run_partitioned(resolution, workers, [&](std::int64_t begin, std::int64_t end) {
    Tally part;
    for (std::int64_t i = begin; i < end; ++i) {
      const double u = (static_cast<double>(i) + 0.5) * h;
      for (int j = 0; j < resolution; ++j) {
        const double v = (j + 0.5) * h;
        part.exactly_one += cover_count(pts, u * rb.a() + v * rb.b(), rho2) == 1 ? 1 : 0;
      }
    }
    return part;
  });
  const double cells = static_cast<double>(resolution) * resolution;
  return static_cast<double>(t.exactly_one) / cells * det_lattice(rb);
}

}  // namespace exactone::oracle
