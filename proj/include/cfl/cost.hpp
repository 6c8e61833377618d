#pragma once

#include <span>

#include "cfl/metric.hpp"

namespace cfl {

// charge(i, F) = D(i, F) + sum_{j in F} max(0, r_j - d(j, i)).
auto charge(const MetricInstance& inst, std::span<const double> r, NodeId i,
            const Configuration& config) -> double;

// Opening costs of F plus every node's distance to its assigned facility.
auto facloc_cost(const MetricInstance& inst, const Configuration& config) -> double;

// Sum of r-bar over all nodes, divided by six. No configuration costs less.
auto lower_bound(const MetricInstance& inst) -> double;

}  // namespace cfl
