#pragma once

// Distributed facility location on the clique.
//
//  1. every node computes its characteristic radius r_i and broadcasts it;
//  2. radii are grouped into classes [c0^k r0, c0^(k+1) r0);
//  3. same-class nodes within r_i + r_j of each other are neighbours (H_k);
//  4. a 2-ruling set T* of the union of the H_k is computed;
//  5. every node announces its membership in T*;
//  6. a member of T* opens unless a lower-class node lies within 2 r_i;
//  7. open nodes announce themselves and everyone connects to the nearest.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cfl/congest.hpp"
#include "cfl/metric.hpp"
#include "cfl/radii.hpp"
#include "cfl/ruling_set.hpp"

namespace cfl {

// 12 c0^2: per-node connection bound for a 2-ruling set, in units of r-bar.
inline constexpr double kConnectionBound = 3.0 * 4.0 * kC0 * kC0;
// c0: per-node bound on the facility-overlap term, in units of r-bar.
inline constexpr double kContributionBound = kC0;
// Aggregate cost bound relative to sum(r-bar).
inline constexpr double kAggregateBound = kConnectionBound + kContributionBound;

// Same-class neighbours within r_i + r_j (closed inequality).
auto hk_adjacent(const MetricInstance& inst, std::span<const double> r,
                 std::span<const int> class_of, NodeId i, NodeId j) -> bool;

// Union of the per-class neighbour graphs.
auto build_class_graph(const MetricInstance& inst, std::span<const double> r,
                       std::span<const int> class_of) -> Graph;

// Opens iff i is in T* and no node of a strictly lower class (ruling-set
// member or not) lies within 2 r_i of it.
auto opening_rule(NodeId i, std::span<const int> class_of, bool in_ruling_set,
                  const MetricInstance& inst, std::span<const double> r) -> bool;

struct NodeAudit {
  double connection_slack = 0.0;    // D(x_i, F*) / rbar_i
  double contribution_slack = 0.0;  // sum_{j in F*} max(0, r_j - d_ji) / rbar_i
};

struct Audit {
  std::vector<NodeAudit> nodes;
  double max_connection_slack = 0.0;
  double max_contribution_slack = 0.0;
  std::size_t connection_violations = 0;    // nodes above kConnectionBound
  std::size_t contribution_violations = 0;  // nodes above kContributionBound
  std::size_t overlap_violations = 0;       // nodes inside two open facilities' radii
  [[nodiscard]] auto passed() const -> bool {
    return connection_violations == 0 && contribution_violations == 0 && overlap_violations == 0;
  }
};

auto audit_configuration(const MetricInstance& inst, const RadiiProfile& radii,
                         const Configuration& config) -> Audit;

struct SolveResult {
  Configuration config;
  double cost = 0.0;
  std::uint64_t rounds = 0;
  std::uint64_t messages = 0;
  RadiiProfile radii;
  std::vector<NodeId> ruling_set;  // T*
  RulingSetRun ruling;
  Audit audit;
};

struct SolveOptions {
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> max_rounds;
  bool parallel = true;
};

auto solve(const MetricInstance& inst, const SolveOptions& options) -> SolveResult;

namespace facloc {
// Per-node programs; node 0 fills the logs.
auto make_programs(const MetricInstance& inst, RulingSetLog* log,
                   std::vector<NodeId>* ruling_seen) -> congest::Programs;
}  // namespace facloc

}  // namespace cfl
