#include "cfl/cost.hpp"

#include <algorithm>
#include <numeric>

#include "cfl/radii.hpp"

namespace cfl {

auto charge(const MetricInstance& inst, std::span<const double> r, NodeId i,
            const Configuration& config) -> double {
  if (config.open.empty()) throw Error(ErrorKind::empty_configuration, "no open facility");
  double value = inst.dist(i, config.assign[i]);
  for (NodeId j : config.open) value += std::max(0.0, r[j] - inst.dist(j, i));
  return value;
}

auto facloc_cost(const MetricInstance& inst, const Configuration& config) -> double {
  if (config.open.empty()) throw Error(ErrorKind::empty_configuration, "no open facility");
  double cost = 0.0;
  for (NodeId j : config.open) cost += inst.open_cost(j);
  for (std::size_t i = 0; i < inst.n(); ++i) cost += inst.dist(i, config.assign[i]);
  return cost;
}

auto lower_bound(const MetricInstance& inst) -> double {
  const auto r = compute_r(inst);
  const auto rbar = compute_rbar(inst, r);
  return std::accumulate(rbar.begin(), rbar.end(), 0.0) / 6.0;
}

}  // namespace cfl
