#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "cfl/metric.hpp"

namespace cfl {

using Edge = std::pair<NodeId, NodeId>;

// Undirected simple graph on nodes 0..n-1 with sorted adjacency lists.
struct Graph {
  std::vector<std::vector<NodeId>> adj;

  [[nodiscard]] auto n() const noexcept -> std::size_t { return adj.size(); }
  [[nodiscard]] auto edge_count() const noexcept -> std::size_t;
  [[nodiscard]] auto adjacent(NodeId u, NodeId v) const -> bool;
  [[nodiscard]] auto edges() const -> std::vector<Edge>;  // (u < v), sorted
};

// Builds a graph from an edge list; rejects self-loops and out-of-range ends,
// merges duplicates.
auto make_graph(std::size_t n, std::span<const Edge> edges) -> Graph;

// Erdos-Renyi G(n, p), reproducible from the seed.
auto random_gnp(std::size_t n, double p, std::uint64_t seed) -> Graph;

// Number of edges with both endpoints in `members`.
auto induced_edge_count(const Graph& g, std::span<const bool> members) -> std::size_t;

}  // namespace cfl
