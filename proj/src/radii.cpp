#include "cfl/radii.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include <fmt/format.h>

namespace cfl {

auto characteristic_radius(std::span<const double> row, double cost) -> double {
  std::vector<double> sorted(row.begin(), row.end());
  std::ranges::sort(sorted);
  // g(r) = sum_{d <= r} (r - d) is continuous, increasing and linear with slope
  // m on [sorted[m-1], sorted[m]]. Find the piece containing g^{-1}(cost).
  double prefix = 0.0;
  const std::size_t n = sorted.size();
  for (std::size_t m = 1; m <= n; ++m) {
    prefix += sorted[m - 1];
    const double r = (cost + prefix) / static_cast<double>(m);
    if (m == n || r <= sorted[m]) return std::max(r, sorted[m - 1]);
  }
  return cost;  // unreachable for n >= 1
}

namespace serial {

auto compute_r(const MetricInstance& inst) -> std::vector<double> {
  std::vector<double> r(inst.n());
  for (std::size_t i = 0; i < inst.n(); ++i) r[i] = characteristic_radius(inst.row(i), inst.open_cost(i));
  return r;
}

auto min_plus_transform(const MetricInstance& inst, std::span<const double> values)
    -> std::vector<double> {
  std::vector<double> out(inst.n());
  for (std::size_t i = 0; i < inst.n(); ++i) {
    auto row = inst.row(i);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < inst.n(); ++j) best = std::min(best, row[j] + values[j]);
    out[i] = best;
  }
  return out;
}

}  // namespace serial

auto compute_r(const MetricInstance& inst) -> std::vector<double> {
  std::vector<double> r(inst.n());
  const auto n = static_cast<std::int64_t>(inst.n());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    r[u] = characteristic_radius(inst.row(u), inst.open_cost(u));
  }
  return r;
}

auto min_plus_transform(const MetricInstance& inst, std::span<const double> values)
    -> std::vector<double> {
  std::vector<double> out(inst.n());
  const auto n = static_cast<std::int64_t>(inst.n());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    auto row = inst.row(static_cast<std::size_t>(i));
    double best = std::numeric_limits<double>::infinity();
#pragma omp simd reduction(min : best)
    for (std::size_t j = 0; j < row.size(); ++j) best = std::min(best, row[j] + values[j]);
    out[static_cast<std::size_t>(i)] = best;
  }
  return out;
}

auto compute_rbar(const MetricInstance& inst, std::span<const double> r) -> std::vector<double> {
  return min_plus_transform(inst, r);
}

auto class_partition(std::span<const double> r, double r0) -> std::vector<int> {
  if (!(r0 > 0.0)) {
    throw Error(ErrorKind::non_positive_minimum_radius, fmt::format("r0 = {}", r0));
  }
  const double log_c0 = std::log(kC0);
  std::vector<int> class_of(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    int k = static_cast<int>(std::floor(std::log(r[i] / r0) / log_c0));
    k = std::max(k, 0);
    while (k > 0 && std::pow(kC0, k) * r0 > r[i]) --k;
    while (std::pow(kC0, k + 1) * r0 <= r[i]) ++k;
    class_of[i] = k;
  }
  return class_of;
}

auto make_radii_profile(const MetricInstance& inst) -> RadiiProfile {
  RadiiProfile p;
  p.r = compute_r(inst);
  p.rbar = compute_rbar(inst, p.r);
  p.r0 = *std::ranges::min_element(p.r);
  p.class_of = class_partition(p.r, p.r0);
  return p;
}

}  // namespace cfl
