#include "cfl/facloc.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "cfl/cost.hpp"
#include "cfl/task.hpp"

namespace cfl {

using congest::NodeContext;
using congest::Payload;
using congest::Tag;
using congest::Task;

namespace {

// Both rules only need node i's own distance row.
auto adjacent_in_class(NodeId i, NodeId j, std::span<const double> row_i,
                       std::span<const double> r, std::span<const int> class_of) -> bool {
  return i != j && class_of[i] == class_of[j] && row_i[j] <= r[i] + r[j];
}

auto opens(NodeId i, std::span<const double> row_i, std::span<const int> class_of,
           bool in_ruling_set, std::span<const double> r) -> bool {
  if (!in_ruling_set) return false;
  for (std::size_t j = 0; j < row_i.size(); ++j) {
    if (class_of[j] < class_of[i] && row_i[j] <= 2.0 * r[i]) return false;
  }
  return true;
}

class FacLocNode final : public congest::CoroutineProgram {
 public:
  FacLocNode(std::span<const double> row, double open_cost, RulingSetLog* log,
             std::vector<NodeId>* ruling_seen)
      : row_(row), open_cost_(open_cost), log_(log), ruling_seen_(ruling_seen) {}

 protected:
  auto body(NodeContext& ctx) -> Task<congest::NodeOutput> override {
    const NodeId self = ctx.self();
    const std::size_t n = ctx.n();

    // Step 1.
    std::vector<double> r(n, 0.0);
    r[self] = characteristic_radius(row_, open_cost_);
    ctx.broadcast(Payload(Tag::real, r[self]));
    co_await ctx.next_round();
    ctx.inbox().for_each([&](NodeId src, const Payload& p) {
      if (p.tag() == Tag::real) r[src] = p.real(0);
    });

    // Steps 2-3.
    const auto class_of = class_partition(r, *std::ranges::min_element(r));
    std::vector<NodeId> neighbors;
    for (NodeId j = 0; j < n; ++j) {
      if (adjacent_in_class(self, j, row_, r, class_of)) neighbors.push_back(j);
    }

    // Step 4.
    const bool in_ruling_set = co_await ruling_set::run_node(ctx, neighbors, log_);

    // Step 5.
    ctx.broadcast(Payload(Tag::flag, std::int64_t{in_ruling_set ? 1 : 0}));
    co_await ctx.next_round();
    if (ruling_seen_ != nullptr) {
      if (in_ruling_set) ruling_seen_->push_back(self);
      ctx.inbox().for_each([&](NodeId src, const Payload& p) {
        if (p.tag() == Tag::flag && p.integer(0) != 0) ruling_seen_->push_back(src);
      });
      std::ranges::sort(*ruling_seen_);
    }

    // Step 6.
    const bool open = opens(self, row_, class_of, in_ruling_set, r);
    ctx.broadcast(Payload(Tag::flag, std::int64_t{open ? 1 : 0}));
    co_await ctx.next_round();

    // Step 7: nearest open facility, lowest index among ties.
    std::optional<NodeId> best;
    auto consider = [&](NodeId j) {
      if (!best || row_[j] < row_[*best] || (row_[j] == row_[*best] && j < *best)) best = j;
    };
    if (open) consider(self);
    ctx.inbox().for_each([&](NodeId src, const Payload& p) {
      if (p.tag() == Tag::flag && p.integer(0) != 0) consider(src);
    });
    if (!best) throw std::logic_error(fmt::format("node {} found no open facility", self));
    co_return static_cast<std::int64_t>(*best);
  }

 private:
  std::span<const double> row_;
  double open_cost_;
  RulingSetLog* log_;
  std::vector<NodeId>* ruling_seen_;
};

}  // namespace

auto hk_adjacent(const MetricInstance& inst, std::span<const double> r,
                 std::span<const int> class_of, NodeId i, NodeId j) -> bool {
  return adjacent_in_class(i, j, inst.row(i), r, class_of);
}

auto build_class_graph(const MetricInstance& inst, std::span<const double> r,
                       std::span<const int> class_of) -> Graph {
  Graph g;
  g.adj.resize(inst.n());
  for (NodeId i = 0; i < inst.n(); ++i) {
    for (NodeId j = 0; j < inst.n(); ++j) {
      if (hk_adjacent(inst, r, class_of, i, j)) g.adj[i].push_back(j);
    }
  }
  return g;
}

auto opening_rule(NodeId i, std::span<const int> class_of, bool in_ruling_set,
                  const MetricInstance& inst, std::span<const double> r) -> bool {
  return opens(i, inst.row(i), class_of, in_ruling_set, r);
}

auto audit_configuration(const MetricInstance& inst, const RadiiProfile& radii,
                         const Configuration& config) -> Audit {
  Audit audit;
  audit.nodes.resize(inst.n());
  const double tol = 1.0 + kRelTol;
  for (NodeId i = 0; i < inst.n(); ++i) {
    double overlap = 0.0;
    std::size_t covering = 0;
    for (NodeId j : config.open) {
      const double d = inst.dist(j, i);
      overlap += std::max(0.0, radii.r[j] - d);
      if (d <= radii.r[j]) ++covering;
    }
    auto& a = audit.nodes[i];
    a.connection_slack = inst.dist(i, config.assign[i]) / radii.rbar[i];
    a.contribution_slack = overlap / radii.rbar[i];
    audit.max_connection_slack = std::max(audit.max_connection_slack, a.connection_slack);
    audit.max_contribution_slack = std::max(audit.max_contribution_slack, a.contribution_slack);
    if (a.connection_slack > kConnectionBound * tol) ++audit.connection_violations;
    if (a.contribution_slack > kContributionBound * tol) ++audit.contribution_violations;
    if (covering > 1) ++audit.overlap_violations;
  }
  return audit;
}

namespace facloc {

auto make_programs(const MetricInstance& inst, RulingSetLog* log, std::vector<NodeId>* ruling_seen)
    -> congest::Programs {
  congest::Programs programs;
  programs.reserve(inst.n());
  for (NodeId i = 0; i < inst.n(); ++i) {
    programs.push_back(std::make_unique<FacLocNode>(inst.row(i), inst.open_cost(i),
                                                    i == 0 ? log : nullptr,
                                                    i == 0 ? ruling_seen : nullptr));
  }
  return programs;
}

}  // namespace facloc

auto solve(const MetricInstance& inst, const SolveOptions& options) -> SolveResult {
  RulingSetLog log;
  std::vector<NodeId> ruling_seen;
  auto programs = facloc::make_programs(inst, &log, &ruling_seen);
  congest::RunOptions run_options;
  run_options.seed = options.seed;
  run_options.parallel = options.parallel;
  run_options.max_rounds =
      options.max_rounds.value_or(ruling_set::default_max_rounds(inst.n()) + 16);
  const auto trace = congest::run(programs, run_options);

  SolveResult result;
  std::vector<NodeId> open;
  for (NodeId i = 0; i < inst.n(); ++i) {
    if (trace.outputs[i] == static_cast<std::int64_t>(i)) open.push_back(i);
  }
  result.config = make_configuration(inst, open);
  for (NodeId i = 0; i < inst.n(); ++i) {
    if (trace.outputs[i] != static_cast<std::int64_t>(result.config.assign[i])) {
      throw std::logic_error(fmt::format("node {} connected to {} instead of {}", i,
                                         trace.outputs[i].value_or(-1), result.config.assign[i]));
    }
  }
  result.cost = facloc_cost(inst, result.config);
  result.rounds = trace.rounds;
  result.messages = trace.messages_total;
  result.radii = make_radii_profile(inst);
  result.ruling_set = ruling_seen;
  result.audit = audit_configuration(inst, result.radii, result.config);

  // The ruling set runs from round 2 up to three rounds before the end; its
  // last round sends nothing of its own.
  auto& ruling = result.ruling;
  ruling.result = ruling_seen;
  ruling.iterations = log.per_iteration.size();
  ruling.per_iteration = std::move(log.per_iteration);
  ruling.final_m = log.final_m;
  ruling.thresholds_crossed = threshold_crossings(ruling, inst.n());
  ruling.rounds = trace.rounds - 3;
  for (std::size_t t = 1; t + 3 < trace.per_round.size(); ++t) {
    ruling.messages += trace.per_round[t].messages;
  }
  return result;
}

}  // namespace cfl
