#include "cfl/ruling_set.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "cfl/sparse_mis.hpp"

namespace cfl {

using congest::NodeContext;
using congest::Payload;
using congest::Tag;
using congest::Task;

namespace ruling_set {
namespace {

// Everyone broadcasts its degree; returns the edge count of the graph.
auto count_edges(NodeContext& ctx, std::uint64_t own_degree) -> Task<std::uint64_t> {
  ctx.broadcast(Payload(Tag::count, static_cast<std::int64_t>(own_degree)));
  co_await ctx.next_round();
  std::uint64_t sum = own_degree;
  ctx.inbox().for_each([&](NodeId, const Payload& p) {
    if (p.tag() == Tag::count) sum += static_cast<std::uint64_t>(p.integer(0));
  });
  co_return sum / 2;
}

class RulingNode final : public congest::CoroutineProgram {
 public:
  RulingNode(std::vector<NodeId> neighbors, RulingSetLog* log)
      : neighbors_(std::move(neighbors)), log_(log) {}

 protected:
  auto body(NodeContext& ctx) -> Task<congest::NodeOutput> override {
    const bool ruler = co_await run_node(ctx, neighbors_, log_);
    co_return ruler ? 1 : 0;
  }

 private:
  std::vector<NodeId> neighbors_;
  RulingSetLog* log_;
};

}  // namespace

auto run_node(NodeContext& ctx, std::span<const NodeId> neighbors, RulingSetLog* log)
    -> Task<bool> {
  const NodeId self = ctx.self();
  const std::uint64_t n = ctx.n();
  std::vector<NodeId> alive_nbrs(neighbors.begin(), neighbors.end());
  bool alive = true;
  bool ruler = false;

  std::uint64_t m = co_await count_edges(ctx, alive_nbrs.size());
  while (m > 2 * n) {
    IterationRecord record;
    record.m = m;
    record.q = std::sqrt(static_cast<double>(n) / static_cast<double>(m));

    // Join T with probability q and announce it.
    const bool in_test = alive && ctx.rng().bernoulli(record.q);
    if (alive) ctx.broadcast(Payload(Tag::flag, std::int64_t{in_test ? 1 : 0}));
    co_await ctx.next_round();
    std::vector<NodeId> test_nbrs;
    for (NodeId v : alive_nbrs) {
      const Payload* p = ctx.inbox().from(v);
      if (p != nullptr && p->integer(0) != 0) test_nbrs.push_back(v);
    }
    if (log != nullptr && log->record_sets) {
      if (in_test) record.test_set.push_back(self);
      ctx.inbox().for_each([&](NodeId src, const Payload& p) {
        if (p.tag() == Tag::flag && p.integer(0) != 0) record.test_set.push_back(src);
      });
      std::ranges::sort(record.test_set);
    }

    // Degree inside C'[T], plus whether this node would leave C'.
    const std::uint64_t deg_test = in_test ? test_nbrs.size() : 0;
    const bool leaving = alive && (in_test || !test_nbrs.empty());
    if (alive) {
      ctx.broadcast(Payload(Tag::report, static_cast<std::int64_t>(deg_test),
                            std::int64_t{leaving ? 1 : 0}));
    }
    co_await ctx.next_round();
    std::uint64_t deg_sum = deg_test;
    ctx.inbox().for_each([&](NodeId src, const Payload& p) {
      if (p.tag() != Tag::report) return;
      deg_sum += static_cast<std::uint64_t>(p.integer(0));
      if (log != nullptr && log->record_sets && p.integer(1) != 0) record.removed.push_back(src);
    });
    std::vector<NodeId> staying;
    for (NodeId v : alive_nbrs) {
      const Payload* p = ctx.inbox().from(v);
      if (p == nullptr || p->integer(1) == 0) staying.push_back(v);
    }
    record.e_test = deg_sum / 2;
    record.accepted = record.e_test <= 4 * n;
    if (log != nullptr) {
      if (log->record_sets && leaving) {
        record.removed.insert(std::ranges::upper_bound(record.removed, self), self);
      }
      if (!record.accepted) record.removed.clear();
      log->per_iteration.push_back(record);
    }
    if (!record.accepted) continue;

    auto mis = co_await sparse_mis::run_node(ctx, in_test, test_nbrs,
                                             sparse_mis::Learners::members, nullptr);
    if (in_test && std::ranges::binary_search(*mis, self)) ruler = true;
    if (leaving) alive = false;
    alive_nbrs = alive ? std::move(staying) : std::vector<NodeId>{};
    m = co_await count_edges(ctx, alive_nbrs.size());
  }
  if (log != nullptr) log->final_m = m;

  // Residual graph has at most 2n edges.
  auto mis = co_await sparse_mis::run_node(ctx, alive, alive_nbrs, sparse_mis::Learners::members,
                                           nullptr);
  if (alive && std::ranges::binary_search(*mis, self)) ruler = true;
  co_return ruler;
}

auto make_programs(const Graph& g, RulingSetLog* log) -> congest::Programs {
  congest::Programs programs;
  programs.reserve(g.n());
  for (NodeId u = 0; u < g.n(); ++u) {
    programs.push_back(std::make_unique<RulingNode>(g.adj[u], u == 0 ? log : nullptr));
  }
  return programs;
}

auto default_max_rounds(std::size_t n) -> std::uint64_t {
  const double log_n = std::max(1.0, std::log2(static_cast<double>(n)));
  const std::uint64_t per_iteration = (4 * n + n - 1) / std::max<std::size_t>(n, 1) + 6;
  return static_cast<std::uint64_t>(std::ceil(64.0 * log_n)) * per_iteration;
}

auto run(const Graph& g, const Options& options) -> RulingSetRun {
  RulingSetLog log;
  log.record_sets = options.record_sets;
  auto programs = make_programs(g, &log);
  congest::RunOptions run_options;
  run_options.seed = options.seed;
  run_options.max_rounds = options.max_rounds.value_or(default_max_rounds(g.n()));
  const auto trace = congest::run(programs, run_options);

  RulingSetRun out;
  for (NodeId u = 0; u < g.n(); ++u) {
    if (trace.outputs[u].value_or(0) == 1) out.result.push_back(u);
  }
  out.iterations = log.per_iteration.size();
  out.per_iteration = std::move(log.per_iteration);
  out.final_m = log.final_m;
  out.thresholds_crossed = threshold_crossings(out, g.n());
  out.rounds = trace.rounds;
  out.messages = trace.messages_total;
  return out;
}

}  // namespace ruling_set

auto threshold_count(std::size_t n) -> int {
  if (n < 3) return 0;
  return static_cast<int>(std::ceil(std::log2(std::log2(static_cast<double>(n)))));
}

auto threshold(std::size_t n, int k) -> double {
  const auto nn = static_cast<double>(n);
  return std::max(std::pow(nn, 1.0 + 1.0 / std::ldexp(1.0, k)), 2.0 * nn);
}

auto threshold_crossings(const RulingSetRun& run, std::size_t n) -> std::vector<ThresholdCrossing> {
  // m[i] is the edge count after i completed iterations; the last entry is the
  // exit value, which is always <= 2n.
  std::vector<std::uint64_t> m;
  for (const auto& it : run.per_iteration) m.push_back(it.m);
  m.push_back(run.final_m);
  std::vector<ThresholdCrossing> out;
  for (int k = 1; k <= threshold_count(n); ++k) {
    const double level = threshold(n, k);
    std::uint64_t first = m.size() - 1;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (static_cast<double>(m[i]) <= level) {
        first = i;
        break;
      }
    }
    out.push_back({k, first});
  }
  return out;
}

auto measure_thresholds(const RulingSetRun& run, std::size_t n) -> std::vector<std::uint64_t> {
  std::vector<std::uint64_t> spans;
  std::uint64_t previous = 0;  // m <= n^2 = L_0 before the first iteration
  for (const auto& c : threshold_crossings(run, n)) {
    spans.push_back(c.iteration - previous);
    previous = c.iteration;
  }
  return spans;
}

auto verify_ruling_set(const Graph& g, std::span<const NodeId> ruling, std::size_t beta)
    -> RulingVerdict {
  RulingVerdict verdict;
  std::vector<char> in_r(g.n(), 0);
  for (NodeId u : ruling) in_r[u] = 1;
  for (NodeId u = 0; u < g.n(); ++u) {
    if (!in_r[u]) continue;
    for (NodeId v : g.adj[u]) {
      if (v > u && in_r[v]) {
        verdict.accepted = false;
        verdict.adjacent_pair = Edge{u, v};
        return verdict;
      }
    }
  }
  constexpr auto kUnreached = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.n(), kUnreached);
  std::deque<NodeId> queue;
  for (NodeId u : ruling) {
    dist[u] = 0;
    queue.push_back(u);
  }
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    for (NodeId v : g.adj[u]) {
      if (dist[v] == kUnreached) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  for (NodeId u = 0; u < g.n(); ++u) {
    if (dist[u] > beta) {
      verdict.accepted = false;
      verdict.far_node = u;
      verdict.far_distance = dist[u];
      return verdict;
    }
  }
  return verdict;
}

}  // namespace cfl
