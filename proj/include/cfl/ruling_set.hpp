#pragma once

// Randomized 2-ruling set of a spanning subgraph C' of the clique.
//
// While C' has more than 2n edges, every remaining node joins a test set T
// with probability q = sqrt(n / m). If C'[T] has at most 4n edges it is small
// enough for the deterministic sparse MIS; the MIS joins the ruling set and
// T together with its neighbourhood leaves C'. Otherwise the iteration is
// discarded. The residual graph (at most 2n edges) is finished with one more
// sparse MIS.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cfl/congest.hpp"
#include "cfl/graph.hpp"
#include "cfl/task.hpp"

namespace cfl {

struct IterationRecord {
  std::uint64_t m = 0;       // edges remaining at the start of the iteration
  double q = 0.0;            // sampling probability used
  std::uint64_t e_test = 0;  // edges of C'[T]
  bool accepted = false;     // e_test <= 4n
  std::vector<NodeId> test_set;  // only when sets are recorded
  std::vector<NodeId> removed;
  auto operator==(const IterationRecord&) const -> bool = default;
};

struct ThresholdCrossing {
  int k = 0;
  std::uint64_t iteration = 0;  // iterations completed when m <= L_k first held (0: from the start)
  auto operator==(const ThresholdCrossing&) const -> bool = default;
};

struct RulingSetRun {
  std::vector<NodeId> result;
  std::uint64_t iterations = 0;
  std::vector<IterationRecord> per_iteration;
  std::uint64_t final_m = 0;  // edges left when the loop exits
  std::vector<ThresholdCrossing> thresholds_crossed;
  std::uint64_t rounds = 0;
  std::uint64_t messages = 0;
  auto operator==(const RulingSetRun&) const -> bool = default;
};

// Written by exactly one node (node 0), which sees every broadcast.
struct RulingSetLog {
  bool record_sets = false;
  std::vector<IterationRecord> per_iteration;
  std::uint64_t final_m = 0;
};

namespace ruling_set {

// One node's part. `neighbors` are its C' neighbours; returns membership in R.
auto run_node(congest::NodeContext& ctx, std::span<const NodeId> neighbors, RulingSetLog* log)
    -> congest::Task<bool>;

auto make_programs(const Graph& g, RulingSetLog* log) -> congest::Programs;

// 64 * log2(n) * (ceil(4n / n) + 6), at least one round.
auto default_max_rounds(std::size_t n) -> std::uint64_t;

struct Options {
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> max_rounds;
  bool record_sets = false;
};

auto run(const Graph& g, const Options& options) -> RulingSetRun;

}  // namespace ruling_set

// Number of iteration-level thresholds, ceil(log2 log2 n) (0 for n < 3).
auto threshold_count(std::size_t n) -> int;

// Edge-count milestone L_k = n^(1 + 1/2^k), floored at the loop-exit level 2n.
auto threshold(std::size_t n, int k) -> double;

// For k = 1..threshold_count, the iteration after which m first dropped to L_k
// or below (0 when it already was before the loop).
auto threshold_crossings(const RulingSetRun& run, std::size_t n) -> std::vector<ThresholdCrossing>;

// Iterations spent between successive thresholds, one entry per k >= 1.
auto measure_thresholds(const RulingSetRun& run, std::size_t n) -> std::vector<std::uint64_t>;

struct RulingVerdict {
  bool accepted = true;
  std::optional<Edge> adjacent_pair;  // two members of R that are adjacent
  std::optional<NodeId> far_node;     // a node more than beta hops from R
  std::size_t far_distance = 0;       // its distance (SIZE_MAX if unreachable)
};

// Accepts iff R is independent in g and every node is within beta hops of R.
auto verify_ruling_set(const Graph& g, std::span<const NodeId> ruling, std::size_t beta)
    -> RulingVerdict;

}  // namespace cfl
