#include "cfl/baselines.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "cfl/radii.hpp"

namespace cfl {
namespace {

// Lexicographic order on the sorted element sequences of two subsets.
auto lex_less(std::uint64_t a, std::uint64_t b) -> bool {
  if (a == b) return false;
  const int p = std::countr_zero(a ^ b);
  if ((a >> p) & 1U) return (b >> p) != 0;
  return (a >> p) == 0;
}

struct Candidate {
  double cost = std::numeric_limits<double>::infinity();
  std::uint64_t mask = 0;

  [[nodiscard]] auto better_than(const Candidate& o) const -> bool {
    if (mask == 0) return false;
    if (o.mask == 0) return true;
    if (cost != o.cost) return cost < o.cost;
    return lex_less(mask, o.mask);
  }
};

// Facilities ordered by distance from each node (ties by index), so the
// nearest open facility is the first entry present in the mask.
auto nearest_order(const MetricInstance& inst) -> std::vector<std::vector<NodeId>> {
  const std::size_t n = inst.n();
  std::vector<std::vector<NodeId>> order(n, std::vector<NodeId>(n));
  for (std::size_t i = 0; i < n; ++i) {
    std::iota(order[i].begin(), order[i].end(), NodeId{0});
    std::ranges::stable_sort(order[i], [&](NodeId a, NodeId b) { return inst.dist(i, a) < inst.dist(i, b); });
  }
  return order;
}

auto cost_with_order(const MetricInstance& inst, const std::vector<std::vector<NodeId>>& order,
                     std::uint64_t mask) -> double {
  double cost = 0.0;
  for (std::uint64_t m = mask; m != 0; m &= m - 1) cost += inst.open_cost(std::countr_zero(m));
  for (std::size_t i = 0; i < inst.n(); ++i) {
    for (NodeId j : order[i]) {
      if ((mask >> j) & 1U) {
        cost += inst.dist(i, j);
        break;
      }
    }
  }
  return cost;
}

void check_size(const MetricInstance& inst, std::size_t limit) {
  if (inst.n() > limit || inst.n() > 62) {
    throw Error(ErrorKind::instance_too_large,
                fmt::format("n = {} exceeds the brute-force limit {}", inst.n(), limit));
  }
}

auto to_result(const MetricInstance& inst, const Candidate& best) -> OptResult {
  std::vector<NodeId> open;
  for (std::uint64_t m = best.mask; m != 0; m &= m - 1) {
    open.push_back(static_cast<NodeId>(std::countr_zero(m)));
  }
  const std::uint64_t total = (std::uint64_t{1} << inst.n()) - 1;
  return {make_configuration(inst, std::move(open)), best.cost, total};
}

}  // namespace

auto mettu_plaxton(const MetricInstance& inst) -> Configuration {
  const auto r = compute_r(inst);
  return mettu_plaxton(inst, r);
}

auto mettu_plaxton(const MetricInstance& inst, std::span<const double> r) -> Configuration {
  std::vector<NodeId> order(inst.n());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::ranges::stable_sort(order, [&](NodeId a, NodeId b) { return r[a] < r[b]; });
  std::vector<NodeId> open;
  for (NodeId i : order) {
    const bool blocked = std::ranges::any_of(
        open, [&](NodeId j) { return inst.dist(i, j) <= 2.0 * r[i]; });
    if (!blocked) open.push_back(i);
  }
  return make_configuration(inst, std::move(open));
}

auto find_separation_violation(const MetricInstance& inst, std::span<const double> r,
                               const Configuration& config)
    -> std::optional<std::pair<NodeId, NodeId>> {
  for (std::size_t a = 0; a < config.open.size(); ++a) {
    for (std::size_t b = a + 1; b < config.open.size(); ++b) {
      const NodeId i = config.open[a];
      const NodeId j = config.open[b];
      if (inst.dist(i, j) <= r[i] + r[j]) return std::pair{i, j};
    }
  }
  return std::nullopt;
}

auto subset_cost(const MetricInstance& inst, std::uint64_t mask) -> double {
  return cost_with_order(inst, nearest_order(inst), mask);
}

namespace serial {

auto brute_force_opt(const MetricInstance& inst, std::size_t limit) -> OptResult {
  check_size(inst, limit);
  const auto order = nearest_order(inst);
  const std::uint64_t total = (std::uint64_t{1} << inst.n()) - 1;
  Candidate best;
  for (std::uint64_t mask = 1; mask <= total; ++mask) {
    Candidate c{cost_with_order(inst, order, mask), mask};
    if (c.better_than(best)) best = c;
  }
  return to_result(inst, best);
}

}  // namespace serial

auto brute_force_opt(const MetricInstance& inst, std::size_t limit) -> OptResult {
  check_size(inst, limit);
  const auto order = nearest_order(inst);
  const auto total = static_cast<std::int64_t>((std::uint64_t{1} << inst.n()) - 1);
  Candidate best;
#pragma omp parallel
  {
    Candidate local;
#pragma omp for schedule(static)
    for (std::int64_t mask = 1; mask <= total; ++mask) {
      const auto m = static_cast<std::uint64_t>(mask);
      Candidate c{cost_with_order(inst, order, m), m};
      if (c.better_than(local)) local = c;
    }
#pragma omp critical
    if (local.better_than(best)) best = local;
  }
  return to_result(inst, best);
}

}  // namespace cfl
