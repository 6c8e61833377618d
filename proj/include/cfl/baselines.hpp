#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include "cfl/metric.hpp"

namespace cfl {

// Sequential greedy: visit nodes by non-decreasing r (ties by index) and open
// a node unless an already-open facility lies within 2 r_i of it.
auto mettu_plaxton(const MetricInstance& inst) -> Configuration;
auto mettu_plaxton(const MetricInstance& inst, std::span<const double> r) -> Configuration;

// A pair of open facilities with d(i,j) <= r_i + r_j, if any.
auto find_separation_violation(const MetricInstance& inst, std::span<const double> r,
                               const Configuration& config)
    -> std::optional<std::pair<NodeId, NodeId>>;

struct OptResult {
  Configuration config;
  double cost = 0.0;
  std::uint64_t enumerated = 0;
};

inline constexpr std::size_t kDefaultBruteForceLimit = 16;

// Exhaustive minimum over all 2^n - 1 nonempty configurations; among equal
// costs the lexicographically smallest open set wins. Throws InstanceTooLarge
// when n exceeds `limit`. The subset space is split across OpenMP threads.
auto brute_force_opt(const MetricInstance& inst, std::size_t limit = kDefaultBruteForceLimit)
    -> OptResult;

namespace serial {
auto brute_force_opt(const MetricInstance& inst, std::size_t limit = kDefaultBruteForceLimit)
    -> OptResult;
}  // namespace serial

// Cost of the configuration whose open set is the bit mask `mask`.
auto subset_cost(const MetricInstance& inst, std::uint64_t mask) -> double;

}  // namespace cfl
