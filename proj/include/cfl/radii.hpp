#pragma once

#include <numbers>
#include <span>
#include <vector>

#include "cfl/metric.hpp"

namespace cfl {

// Base of the geometric radius classes, 1 + 1/sqrt(2).
inline constexpr double kC0 = 1.0 + std::numbers::sqrt2 / 2.0;

// The unique r >= 0 with sum over {j : row[j] <= r} of (r - row[j]) == cost.
// `row` is the node's distance row (it contains its own zero). Solved exactly
// on the linear piece of the sorted-prefix function where it crosses `cost`.
auto characteristic_radius(std::span<const double> row, double cost) -> double;

auto compute_r(const MetricInstance& inst) -> std::vector<double>;

// values'[i] = min_j (d(i,j) + values[j]). Applied to r this yields r-bar.
auto min_plus_transform(const MetricInstance& inst, std::span<const double> values)
    -> std::vector<double>;

auto compute_rbar(const MetricInstance& inst, std::span<const double> r) -> std::vector<double>;

namespace serial {
auto compute_r(const MetricInstance& inst) -> std::vector<double>;
auto min_plus_transform(const MetricInstance& inst, std::span<const double> values)
    -> std::vector<double>;
}  // namespace serial

// class_of[i] = k with kC0^k * r0 <= r[i] < kC0^(k+1) * r0, evaluated in the
// working precision (a log-based estimate corrected against the inequality).
auto class_partition(std::span<const double> r, double r0) -> std::vector<int>;

struct RadiiProfile {
  std::vector<double> r;
  std::vector<double> rbar;
  double r0 = 0.0;
  std::vector<int> class_of;
};

auto make_radii_profile(const MetricInstance& inst) -> RadiiProfile;

}  // namespace cfl
