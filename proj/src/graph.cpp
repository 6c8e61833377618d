#include "cfl/graph.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "cfl/random.hpp"

namespace cfl {

auto Graph::edge_count() const noexcept -> std::size_t {
  std::size_t deg_sum = 0;
  for (const auto& a : adj) deg_sum += a.size();
  return deg_sum / 2;
}

auto Graph::adjacent(NodeId u, NodeId v) const -> bool {
  return std::ranges::binary_search(adj[u], v);
}

auto Graph::edges() const -> std::vector<Edge> {
  std::vector<Edge> out;
  for (NodeId u = 0; u < adj.size(); ++u) {
    for (NodeId v : adj[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

auto make_graph(std::size_t n, std::span<const Edge> edges) -> Graph {
  Graph g;
  g.adj.resize(n);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n || u == v) {
      throw Error(ErrorKind::malformed_input, fmt::format("invalid edge ({}, {}) for n = {}", u, v, n));
    }
    g.adj[u].push_back(v);
    g.adj[v].push_back(u);
  }
  for (auto& a : g.adj) {
    std::ranges::sort(a);
    auto dup = std::ranges::unique(a);
    a.erase(dup.begin(), dup.end());
  }
  return g;
}

auto random_gnp(std::size_t n, double p, std::uint64_t seed) -> Graph {
  Graph g;
  g.adj.resize(n);
  std::uint64_t state = splitmix64(seed ^ 0x6a09e667f3bcc909ULL);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (to_unit_interval(splitmix64(state++)) < p) {
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
      }
    }
  }
  return g;  // lists are built in ascending order
}

auto induced_edge_count(const Graph& g, std::span<const bool> members) -> std::size_t {
  std::size_t count = 0;
  for (NodeId u = 0; u < g.n(); ++u) {
    if (!members[u]) continue;
    for (NodeId v : g.adj[u]) {
      if (u < v && members[v]) ++count;
    }
  }
  return count;
}

}  // namespace cfl
