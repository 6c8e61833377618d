#pragma once

// Deterministic MIS of a sparse induced subgraph C'[M] on the clique.
//
// Every node broadcasts its id and whether it is in M, then its out-degree
// (edges oriented from lower to higher rank). A node of rank r with out-degree
// d labels its out-edges D_r .. D_r + d - 1, where D_r is the out-degree sum of
// lower ranks, and ships the edge labelled l to the node of rank l mod n. Each
// relay rebroadcasts what it received, one edge per round, after which every
// node knows C'[M] and runs the same greedy MIS locally. Takes
// ceil(e[M] / n) + 4 rounds.

#include <optional>
#include <span>
#include <vector>

#include "cfl/congest.hpp"
#include "cfl/graph.hpp"
#include "cfl/task.hpp"

namespace cfl {

// Greedy MIS over the vertices listed in `order`, taken in that order; edges to
// vertices outside `order` are ignored. Result is sorted ascending.
auto greedy_mis(const Graph& g, std::span<const NodeId> order) -> std::vector<NodeId>;

struct LabeledEdge {
  NodeId from;  // lower rank endpoint
  NodeId to;
  std::uint64_t label;
  auto operator==(const LabeledEdge&) const -> bool = default;
};

// Centralized edge labelling of C'[M] with ranks equal to node ids.
struct EdgeLabeling {
  std::vector<std::uint64_t> out_degree;
  std::vector<std::uint64_t> prefix;  // out-degree sum of lower ranks
  std::vector<LabeledEdge> edges;
};
auto label_edges(const Graph& g, std::span<const bool> members) -> EdgeLabeling;

// Per-node instrumentation written by the distributed routine; each node only
// touches its own slot.
struct SparseMisProbe {
  explicit SparseMisProbe(std::size_t n) : labels(n), received(n, 0), mis_seen(n) {}
  std::vector<std::vector<LabeledEdge>> labels;
  std::vector<std::size_t> received;
  std::vector<std::optional<std::vector<NodeId>>> mis_seen;
};

namespace sparse_mis {

enum class Learners { everyone, members };

// One node's part of the routine. `neighbors_in_m` are the node's C' neighbours
// that belong to M (ignored when the node is not in M). Returns L when this
// node computed it: always for Learners::everyone, only on members otherwise.
auto run_node(congest::NodeContext& ctx, bool member, std::span<const NodeId> neighbors_in_m,
              Learners learners, SparseMisProbe* probe)
    -> congest::Task<std::optional<std::vector<NodeId>>>;

// Standalone programs over the whole clique; node output is 1 iff in L.
auto make_programs(const Graph& g, std::span<const bool> members, SparseMisProbe* probe)
    -> congest::Programs;

struct Result {
  std::vector<NodeId> mis;
  congest::Trace trace;
};

auto run(const Graph& g, std::span<const bool> members, std::uint64_t seed,
         SparseMisProbe* probe = nullptr) -> Result;

}  // namespace sparse_mis

}  // namespace cfl
