#include "cfl/sparse_mis.hpp"

#include <algorithm>

namespace cfl {

using congest::NodeContext;
using congest::NodeRef;
using congest::Payload;
using congest::Tag;
using congest::Task;

auto greedy_mis(const Graph& g, std::span<const NodeId> order) -> std::vector<NodeId> {
  std::vector<char> in_order(g.n(), 0);
  for (NodeId v : order) in_order[v] = 1;
  std::vector<char> blocked(g.n(), 0);
  std::vector<NodeId> mis;
  for (NodeId v : order) {
    if (blocked[v]) continue;
    mis.push_back(v);
    for (NodeId w : g.adj[v]) {
      if (in_order[w]) blocked[w] = 1;
    }
  }
  std::ranges::sort(mis);
  return mis;
}

auto label_edges(const Graph& g, std::span<const bool> members) -> EdgeLabeling {
  EdgeLabeling out;
  out.out_degree.assign(g.n(), 0);
  out.prefix.assign(g.n(), 0);
  std::uint64_t running = 0;
  for (NodeId u = 0; u < g.n(); ++u) {
    out.prefix[u] = running;
    if (!members[u]) continue;
    for (NodeId v : g.adj[u]) {
      if (v > u && members[v]) {
        out.edges.push_back({u, v, running + out.out_degree[u]});
        ++out.out_degree[u];
      }
    }
    running += out.out_degree[u];
  }
  return out;
}

namespace sparse_mis {
namespace {

auto local_mis(std::span<const NodeId> members, std::span<const Edge> edges) -> std::vector<NodeId> {
  auto index_of = [&](NodeId v) {
    return static_cast<NodeId>(std::ranges::lower_bound(members, v) - members.begin());
  };
  std::vector<Edge> local;
  local.reserve(edges.size());
  for (auto [u, v] : edges) local.emplace_back(index_of(u), index_of(v));
  const Graph g = make_graph(members.size(), local);
  std::vector<NodeId> order(members.size());
  for (NodeId k = 0; k < order.size(); ++k) order[k] = k;
  auto mis = greedy_mis(g, order);
  for (auto& v : mis) v = members[v];
  return mis;
}

class StandaloneNode final : public congest::CoroutineProgram {
 public:
  StandaloneNode(bool member, std::vector<NodeId> neighbors, SparseMisProbe* probe)
      : member_(member), neighbors_(std::move(neighbors)), probe_(probe) {}

 protected:
  auto body(NodeContext& ctx) -> Task<congest::NodeOutput> override {
    auto mis = co_await run_node(ctx, member_, neighbors_, Learners::everyone, probe_);
    co_return std::ranges::binary_search(*mis, ctx.self()) ? 1 : 0;
  }

 private:
  bool member_;
  std::vector<NodeId> neighbors_;
  SparseMisProbe* probe_;
};

}  // namespace

auto run_node(NodeContext& ctx, bool member, std::span<const NodeId> neighbors_in_m,
              Learners learners, SparseMisProbe* probe)
    -> Task<std::optional<std::vector<NodeId>>> {
  const NodeId self = ctx.self();
  const std::size_t n = ctx.n();

  // Step 1: ids, together with membership in M.
  ctx.broadcast(Payload(Tag::id, NodeRef{self}, std::int64_t{member ? 1 : 0}));
  co_await ctx.next_round();
  std::vector<NodeId> ids{self};
  std::vector<NodeId> members;
  if (member) members.push_back(self);
  ctx.inbox().for_each([&](NodeId, const Payload& p) {
    if (p.tag() != Tag::id) return;
    ids.push_back(p.node(0));
    if (p.integer(1) != 0) members.push_back(p.node(0));
  });
  std::ranges::sort(ids);
  std::ranges::sort(members);
  auto rank_of = [&](NodeId v) -> std::size_t {
    return static_cast<std::size_t>(std::ranges::lower_bound(ids, v) - ids.begin());
  };
  const std::size_t my_rank = rank_of(self);

  // Step 2: out-degree towards higher ranks.
  std::vector<NodeId> out;
  if (member) {
    for (NodeId v : neighbors_in_m) {
      if (rank_of(v) > my_rank) out.push_back(v);
    }
    std::ranges::sort(out, {}, rank_of);
  }
  ctx.broadcast(Payload(Tag::count, static_cast<std::int64_t>(out.size())));
  co_await ctx.next_round();

  // Step 3: label range [prefix, prefix + d).
  std::uint64_t prefix = 0;
  std::uint64_t total = out.size();
  ctx.inbox().for_each([&](NodeId src, const Payload& p) {
    if (p.tag() != Tag::count) return;
    const auto d = static_cast<std::uint64_t>(p.integer(0));
    total += d;
    if (rank_of(src) < my_rank) prefix += d;
  });

  // Step 4: ship edge labelled l to the node of rank l mod n.
  std::vector<Edge> relay;
  for (std::size_t t = 0; t < out.size(); ++t) {
    const std::uint64_t label = prefix + t;
    const NodeId dst = ids[label % n];
    if (probe != nullptr) probe->labels[self].push_back({self, out[t], label});
    if (dst == self) {
      relay.emplace_back(self, out[t]);
    } else {
      ctx.send(dst, Payload(Tag::edge, NodeRef{self}, NodeRef{out[t]}));
    }
  }
  const std::uint64_t relay_rounds = (total + n - 1) / n;
  co_await ctx.next_round();

  // Step 5: rebroadcast received edges, one per round.
  ctx.inbox().for_each([&](NodeId, const Payload& p) {
    if (p.tag() == Tag::edge) relay.emplace_back(p.node(0), p.node(1));
  });
  if (probe != nullptr) probe->received[self] = relay.size();
  std::vector<Edge> known = relay;
  for (std::uint64_t k = 0; k < relay_rounds; ++k) {
    if (k < relay.size()) {
      ctx.broadcast(Payload(Tag::edge, NodeRef{relay[k].first}, NodeRef{relay[k].second}));
    }
    co_await ctx.next_round();
    ctx.inbox().for_each([&](NodeId, const Payload& p) {
      if (p.tag() == Tag::edge) known.emplace_back(p.node(0), p.node(1));
    });
  }

  // Step 6: identical greedy MIS everywhere it is needed.
  if (learners == Learners::members && !member) co_return std::nullopt;
  auto mis = local_mis(members, known);
  if (probe != nullptr) probe->mis_seen[self] = mis;
  co_return mis;
}

auto make_programs(const Graph& g, std::span<const bool> members, SparseMisProbe* probe)
    -> congest::Programs {
  congest::Programs programs;
  programs.reserve(g.n());
  for (NodeId u = 0; u < g.n(); ++u) {
    std::vector<NodeId> nbrs;
    if (members[u]) {
      for (NodeId v : g.adj[u]) {
        if (members[v]) nbrs.push_back(v);
      }
    }
    programs.push_back(std::make_unique<StandaloneNode>(members[u], std::move(nbrs), probe));
  }
  return programs;
}

auto run(const Graph& g, std::span<const bool> members, std::uint64_t seed, SparseMisProbe* probe)
    -> Result {
  auto programs = make_programs(g, members, probe);
  const std::size_t e = induced_edge_count(g, members);
  congest::RunOptions options;
  options.seed = seed;
  options.max_rounds = (e + g.n() - 1) / g.n() + 16;
  Result result;
  result.trace = congest::run(programs, options);
  for (NodeId u = 0; u < g.n(); ++u) {
    if (result.trace.outputs[u].value_or(0) == 1) result.mis.push_back(u);
  }
  return result;
}

}  // namespace sparse_mis
}  // namespace cfl
