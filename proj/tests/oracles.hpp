#pragma once

// Independent reference computations used by the tests.

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "cfl/generate.hpp"
#include "cfl/metric.hpp"

namespace cfl::testing {

// g(r) = sum over the closed ball of (r - d).
inline auto ball_excess(std::span<const double> row, double r) -> double {
  double s = 0.0;
  for (double d : row) {
    if (d <= r) s += r - d;
  }
  return s;
}

// Bisection on the monotone g(r) - f.
inline auto bisect_radius(std::span<const double> row, double f) -> double {
  double lo = 0.0;
  double hi = f + *std::ranges::max_element(row) + 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ball_excess(row, mid) < f ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Direct evaluation of the charge formula with its own nearest-facility scan.
inline auto direct_charge(const MetricInstance& inst, std::span<const double> r, NodeId i,
                          const std::vector<NodeId>& open) -> double {
  double nearest = std::numeric_limits<double>::infinity();
  double overlap = 0.0;
  for (NodeId j : open) {
    nearest = std::min(nearest, inst.dist(i, j));
    overlap += std::max(0.0, r[j] - inst.dist(j, i));
  }
  return nearest + overlap;
}

// Straightforward cost of an open set, without Configuration.
inline auto direct_cost(const MetricInstance& inst, const std::vector<NodeId>& open) -> double {
  double total = 0.0;
  for (NodeId j : open) total += inst.open_cost(j);
  for (NodeId i = 0; i < inst.n(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (NodeId j : open) best = std::min(best, inst.dist(i, j));
    total += best;
  }
  return total;
}

// Minimum over all nonempty subsets by recursive enumeration.
inline auto enumerate_opt(const MetricInstance& inst) -> double {
  double best = std::numeric_limits<double>::infinity();
  std::vector<NodeId> open;
  auto rec = [&](auto&& self, NodeId next) -> void {
    if (next == inst.n()) {
      if (!open.empty()) best = std::min(best, direct_cost(inst, open));
      return;
    }
    self(self, next + 1);
    open.push_back(next);
    self(self, next + 1);
    open.pop_back();
  };
  rec(rec, 0);
  return best;
}

inline auto line_instance(const std::vector<double>& coords, const std::vector<double>& f)
    -> MetricInstance {
  const std::size_t n = coords.size();
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::abs(coords[i] - coords[j]);
  }
  return validate_instance(n, std::move(d), f);
}

inline auto random_instance(std::uint64_t seed, std::size_t n,
                            GeneratorKind kind = GeneratorKind::euclidean) -> MetricInstance {
  GeneratorSpec spec;
  spec.kind = kind;
  spec.n = n;
  spec.cost_low = 0.05;
  spec.cost_high = 2.0;
  spec.seed = seed;
  return generate(spec);
}

}  // namespace cfl::testing
