#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cfl/error.hpp"

namespace cfl {

using NodeId = std::uint32_t;

// Relative tolerance used for every floating-point equality in the library.
inline constexpr double kRelTol = 1e-9;

// Discrete metric space with opening costs. Only constructible through
// validate_instance, so every live instance satisfies the metric invariants
// that were requested at validation time.
class MetricInstance {
 public:
  [[nodiscard]] auto n() const noexcept -> std::size_t { return n_; }
  [[nodiscard]] auto dist(std::size_t i, std::size_t j) const noexcept -> double {
    return dist_[i * n_ + j];
  }
  [[nodiscard]] auto row(std::size_t i) const noexcept -> std::span<const double> {
    return {dist_.data() + i * n_, n_};
  }
  [[nodiscard]] auto open_cost(std::size_t i) const noexcept -> double { return cost_[i]; }
  [[nodiscard]] auto open_costs() const noexcept -> std::span<const double> { return cost_; }
  [[nodiscard]] auto matrix() const noexcept -> std::span<const double> { return dist_; }

 private:
  friend auto validate_instance(std::size_t, std::vector<double>, std::vector<double>, bool)
      -> MetricInstance;

  MetricInstance(std::size_t n, std::vector<double> dist, std::vector<double> cost)
      : n_(n), dist_(std::move(dist)), cost_(std::move(cost)) {}

  std::size_t n_ = 0;
  std::vector<double> dist_;
  std::vector<double> cost_;
};

// Checks, in order: shape, zero diagonal, finite non-negative entries,
// symmetry, strictly positive off-diagonal distances, opening costs > 0 and
// finally the triangle inequality (skipped when check_triangle is false).
// Throws cfl::Error (or cfl::TriangleViolation) naming the first violation.
auto validate_instance(std::size_t n, std::vector<double> row_major_dist,
                       std::vector<double> open_cost, bool check_triangle = true)
    -> MetricInstance;

auto validate_instance(const std::vector<std::vector<double>>& dist,
                       std::vector<double> open_cost, bool check_triangle = true)
    -> MetricInstance;

// First (lexicographic) witness (i, j, k) with d(i,j) + d(j,k) < d(i,k) beyond
// tolerance, or nullopt. OpenMP-parallel over i.
auto find_triangle_violation(std::size_t n, std::span<const double> dist)
    -> std::optional<std::array<std::size_t, 3>>;

namespace serial {
auto find_triangle_violation(std::size_t n, std::span<const double> dist)
    -> std::optional<std::array<std::size_t, 3>>;
}  // namespace serial

// A nonempty set of open facilities together with the nearest-facility
// assignment (ties broken towards the lowest facility index).
struct Configuration {
  std::vector<NodeId> open;    // sorted ascending
  std::vector<NodeId> assign;  // assign[i] = facility serving i

  [[nodiscard]] auto is_open(NodeId i) const -> bool;
};

auto make_configuration(const MetricInstance& inst, std::vector<NodeId> open) -> Configuration;

}  // namespace cfl
