#include <gtest/gtest.h>

#include <cmath>

#include "cfl/ruling_set.hpp"

namespace cfl {
namespace {

auto path(std::size_t n) -> Graph {
  std::vector<Edge> e;
  for (NodeId i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return make_graph(n, e);
}

auto clique(std::size_t n) -> Graph {
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) e.emplace_back(i, j);
  }
  return make_graph(n, e);
}

TEST(Verify, PathExamples) {
  const auto abc = path(3);
  EXPECT_TRUE(verify_ruling_set(abc, std::vector<NodeId>{0}, 2).accepted);
  EXPECT_FALSE(verify_ruling_set(abc, std::vector<NodeId>{0}, 1).accepted);

  const auto adjacent = verify_ruling_set(abc, std::vector<NodeId>{0, 1}, 5);
  EXPECT_FALSE(adjacent.accepted);
  EXPECT_EQ(adjacent.adjacent_pair, (Edge{0, 1}));

  const auto far = verify_ruling_set(path(5), std::vector<NodeId>{0}, 2);
  EXPECT_FALSE(far.accepted);
  EXPECT_EQ(far.far_node, NodeId{3});
  EXPECT_EQ(far.far_distance, 3u);
}

TEST(Verify, UnreachableNode) {
  const auto g = make_graph(3, std::vector<Edge>{{0, 1}});
  const auto v = verify_ruling_set(g, std::vector<NodeId>{0}, 2);
  EXPECT_FALSE(v.accepted);
  EXPECT_EQ(v.far_node, NodeId{2});
}

TEST(RulingSet, EmptyGraphTakesEveryone) {
  const auto run = ruling_set::run(make_graph(10, {}), {});
  EXPECT_EQ(run.result.size(), 10u);
  EXPECT_EQ(run.iterations, 0u);
  EXPECT_EQ(run.final_m, 0u);
  EXPECT_EQ(measure_thresholds(run, 10), (std::vector<std::uint64_t>{0, 0}));
}

TEST(RulingSet, CliqueGivesSingleRuler) {
  const auto g = clique(64);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto run = ruling_set::run(g, {.seed = seed});
    EXPECT_EQ(run.result.size(), 1u);
    EXPECT_TRUE(verify_ruling_set(g, run.result, 1).accepted);
  }
}

TEST(RulingSet, RandomGraphsVerify) {
  const auto g = random_gnp(256, 0.1, 42);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto run = ruling_set::run(g, {.seed = seed});
    const auto v = verify_ruling_set(g, run.result, 2);
    EXPECT_TRUE(v.accepted) << "seed " << seed;
    EXPECT_LE(run.final_m, 2u * 256);
  }
}

TEST(RulingSet, IterationLogInvariants) {
  constexpr std::size_t n = 128;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = random_gnp(n, 0.3, seed);
    const auto run = ruling_set::run(g, {.seed = seed, .record_sets = true});
    ASSERT_EQ(run.iterations, run.per_iteration.size());
    ASSERT_GE(run.iterations, 1u);
    EXPECT_EQ(run.per_iteration.front().m, g.edge_count());

    std::vector<char> alive(n, 1);
    for (const auto& it : run.per_iteration) {
      EXPECT_GT(it.m, 2 * n);
      EXPECT_DOUBLE_EQ(it.q, std::sqrt(static_cast<double>(n) / static_cast<double>(it.m)));
      EXPECT_EQ(it.accepted, it.e_test <= 4 * n);

      // e[C'[T]] and T u N(T) recomputed over the alive part of the graph.
      std::vector<char> in_t(n, 0);
      for (NodeId v : it.test_set) {
        EXPECT_TRUE(alive[v]);
        in_t[v] = 1;
      }
      std::uint64_t e_t = 0;
      std::vector<NodeId> closed;
      for (NodeId u = 0; u < n; ++u) {
        if (!alive[u]) continue;
        bool touches = in_t[u] != 0;
        for (NodeId v : g.adj[u]) {
          if (!alive[v]) continue;
          if (in_t[u] && in_t[v] && u < v) ++e_t;
          touches = touches || in_t[v];
        }
        if (touches) closed.push_back(u);
      }
      EXPECT_EQ(it.e_test, e_t);
      if (it.accepted) {
        EXPECT_EQ(it.removed, closed);
        for (NodeId v : closed) alive[v] = 0;
      } else {
        EXPECT_TRUE(it.removed.empty());
      }
    }
    EXPECT_TRUE(verify_ruling_set(g, run.result, 2).accepted);
  }
}

TEST(RulingSet, DeterministicPerSeed) {
  const auto g = random_gnp(200, 0.2, 3);
  const ruling_set::Options options{.seed = 11, .record_sets = true};
  EXPECT_EQ(ruling_set::run(g, options), ruling_set::run(g, options));
}

TEST(RulingSet, RoundAccounting) {
  // Empty graph: degree broadcast, then the sparse MIS on zero edges.
  EXPECT_EQ(ruling_set::run(make_graph(10, {}), {}).rounds, 1u + 4u);
}

TEST(Thresholds, Schedule) {
  EXPECT_EQ(threshold_count(2), 0);
  EXPECT_EQ(threshold_count(4), 1);
  EXPECT_EQ(threshold_count(256), 3);
  EXPECT_EQ(threshold_count(1024), 4);
  EXPECT_EQ(threshold_count(4096), 4);
  EXPECT_DOUBLE_EQ(threshold(256, 1), 4096.0);
  EXPECT_DOUBLE_EQ(threshold(256, 3), 512.0);  // 256^(9/8) < 2n
  EXPECT_NEAR(threshold(1024, 2), std::pow(1024.0, 1.25), 1e-9);
}

TEST(Thresholds, SingleIterationCrossesEverything) {
  constexpr std::size_t n = 256;
  RulingSetRun run;
  run.per_iteration.push_back({.m = n * n});
  run.iterations = 1;
  run.final_m = 3 * n / 2;
  const auto crossed = threshold_crossings(run, n);
  ASSERT_EQ(crossed.size(), 3u);
  for (const auto& c : crossed) EXPECT_EQ(c.iteration, 1u);
  EXPECT_EQ(measure_thresholds(run, n), (std::vector<std::uint64_t>{1, 0, 0}));
}

TEST(Thresholds, StagedProgress) {
  constexpr std::size_t n = 256;
  RulingSetRun run;
  for (std::uint64_t m : {60000, 60000, 3000, 2000}) run.per_iteration.push_back({.m = m});
  run.final_m = 100;
  // L_1 = 4096, L_2 ~ 1024, L_3 = 512.
  EXPECT_EQ(measure_thresholds(run, n), (std::vector<std::uint64_t>{2, 2, 0}));
}

TEST(RulingSet, DefaultRoundBudget) {
  EXPECT_EQ(ruling_set::default_max_rounds(1024), 640u * 10u);
  EXPECT_GE(ruling_set::default_max_rounds(1), 1u);
}

}  // namespace
}  // namespace cfl
