#include "cfl/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace cfl {
namespace {

auto violates(double direct, double detour) -> bool {
  return direct - detour > kRelTol * direct;
}

// First k with d(i,j) + d(j,k) < d(i,k) for fixed (i, j), or n.
auto first_bad_k(std::span<const double> row_i, std::span<const double> row_j, double d_ij)
    -> std::size_t {
  bool any = false;
  for (std::size_t k = 0; k < row_i.size(); ++k) {
    any |= violates(row_i[k], d_ij + row_j[k]);
  }
  if (!any) return row_i.size();
  for (std::size_t k = 0; k < row_i.size(); ++k) {
    if (violates(row_i[k], d_ij + row_j[k])) return k;
  }
  return row_i.size();
}

auto first_violation_in_row(std::size_t n, std::span<const double> dist, std::size_t i)
    -> std::optional<std::array<std::size_t, 3>> {
  auto row_i = dist.subspan(i * n, n);
  for (std::size_t j = 0; j < n; ++j) {
    auto k = first_bad_k(row_i, dist.subspan(j * n, n), row_i[j]);
    if (k < n) return std::array<std::size_t, 3>{i, j, k};
  }
  return std::nullopt;
}

}  // namespace

namespace serial {

auto find_triangle_violation(std::size_t n, std::span<const double> dist)
    -> std::optional<std::array<std::size_t, 3>> {
  for (std::size_t i = 0; i < n; ++i) {
    if (auto w = first_violation_in_row(n, dist, i)) return w;
  }
  return std::nullopt;
}

}  // namespace serial

auto find_triangle_violation(std::size_t n, std::span<const double> dist)
    -> std::optional<std::array<std::size_t, 3>> {
  std::vector<std::optional<std::array<std::size_t, 3>>> per_row(n);
  const auto rows = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < rows; ++i) {
    per_row[static_cast<std::size_t>(i)] =
        first_violation_in_row(n, dist, static_cast<std::size_t>(i));
  }
  for (auto& w : per_row) {
    if (w) return w;
  }
  return std::nullopt;
}

auto validate_instance(std::size_t n, std::vector<double> d, std::vector<double> f,
                       bool check_triangle) -> MetricInstance {
  if (n == 0) throw Error(ErrorKind::malformed_input, "instance must have at least one point");
  if (d.size() != n * n) {
    throw Error(ErrorKind::malformed_input,
                fmt::format("distance matrix has {} entries, expected {}", d.size(), n * n));
  }
  if (f.size() != n) {
    throw Error(ErrorKind::malformed_input,
                fmt::format("cost vector has length {}, expected {}", f.size(), n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i * n + i] != 0.0) {
      throw Error(ErrorKind::non_zero_diagonal, fmt::format("d({0},{0}) = {1}", i, d[i * n + i]));
    }
  }
  for (std::size_t i = 0; i < n * n; ++i) {
    if (!std::isfinite(d[i]) || d[i] < 0.0) {
      throw Error(ErrorKind::invalid_distance,
                  fmt::format("d({},{}) = {} is not a finite non-negative number", i / n, i % n,
                              d[i]));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = d[i * n + j];
      const double b = d[j * n + i];
      if (std::abs(a - b) > kRelTol * std::max(a, b)) {
        throw Error(ErrorKind::asymmetric_distance,
                    fmt::format("d({0},{1}) = {2} but d({1},{0}) = {3}", i, j, a, b));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && d[i * n + j] == 0.0) {
        throw Error(ErrorKind::zero_distance_between_distinct_points,
                    fmt::format("d({},{}) = 0", i, j));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(f[i] > 0.0) || !std::isfinite(f[i])) {
      throw Error(ErrorKind::non_positive_opening_cost, fmt::format("f[{}] = {}", i, f[i]));
    }
  }
  if (check_triangle) {
    if (auto w = find_triangle_violation(n, d)) throw TriangleViolation((*w)[0], (*w)[1], (*w)[2]);
  }
  return MetricInstance(n, std::move(d), std::move(f));
}

auto validate_instance(const std::vector<std::vector<double>>& dist, std::vector<double> f,
                       bool check_triangle) -> MetricInstance {
  const std::size_t n = dist.size();
  std::vector<double> flat;
  flat.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i].size() != n) {
      throw Error(ErrorKind::malformed_input,
                  fmt::format("row {} has {} entries, expected {}", i, dist[i].size(), n));
    }
    flat.insert(flat.end(), dist[i].begin(), dist[i].end());
  }
  return validate_instance(n, std::move(flat), std::move(f), check_triangle);
}

auto Configuration::is_open(NodeId i) const -> bool {
  return std::binary_search(open.begin(), open.end(), i);
}

auto make_configuration(const MetricInstance& inst, std::vector<NodeId> open) -> Configuration {
  if (open.empty()) throw Error(ErrorKind::empty_configuration, "no open facility");
  std::ranges::sort(open);
  auto dup = std::ranges::unique(open);
  open.erase(dup.begin(), dup.end());
  if (open.back() >= inst.n()) {
    throw Error(ErrorKind::malformed_input, fmt::format("facility {} out of range", open.back()));
  }
  Configuration config{std::move(open), std::vector<NodeId>(inst.n())};
  for (std::size_t i = 0; i < inst.n(); ++i) {
    NodeId best = config.open.front();
    double best_d = inst.dist(i, best);
    for (NodeId j : config.open) {
      // strict comparison keeps the lowest index among ties
      if (inst.dist(i, j) < best_d) {
        best = j;
        best_d = inst.dist(i, j);
      }
    }
    config.assign[i] = best;
  }
  return config;
}

}  // namespace cfl
