#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "cfl/cost.hpp"
#include "cfl/generate.hpp"
#include "cfl/radii.hpp"
#include "oracles.hpp"

namespace cfl {
namespace {

using testing::line_instance;
using testing::random_instance;

auto expect_kind(ErrorKind kind, auto&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(kind);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

TEST(Validate, Figure2IsValid) {
  const auto inst = validate_instance(2, {0, 1, 1, 0}, {1, 99});
  EXPECT_EQ(inst.n(), 2u);
  EXPECT_EQ(inst.dist(0, 1), 1.0);
  EXPECT_EQ(inst.open_cost(1), 99.0);
}

TEST(Validate, SinglePoint) {
  const auto inst = validate_instance(1, {0}, {5});
  EXPECT_EQ(inst.n(), 1u);
}

TEST(Validate, TriangleWitness) {
  try {
    validate_instance({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}, {1, 1, 1});
    FAIL() << "no violation reported";
  } catch (const TriangleViolation& e) {
    EXPECT_EQ(e.kind(), ErrorKind::triangle_violation);
    EXPECT_EQ(e.witness(), (std::array<std::size_t, 3>{0, 1, 2}));
  }
}

TEST(Validate, Rejections) {
  expect_kind(ErrorKind::asymmetric_distance, [] { validate_instance(2, {0, 1, 2, 0}, {1, 1}); });
  expect_kind(ErrorKind::non_zero_diagonal, [] { validate_instance(2, {1, 1, 1, 0}, {1, 1}); });
  expect_kind(ErrorKind::zero_distance_between_distinct_points,
              [] { validate_instance(2, {0, 0, 0, 0}, {1, 1}); });
  expect_kind(ErrorKind::non_positive_opening_cost, [] { validate_instance(2, {0, 1, 1, 0}, {1, 0}); });
  expect_kind(ErrorKind::invalid_distance, [] { validate_instance(2, {0, -1, -1, 0}, {1, 1}); });
  expect_kind(ErrorKind::invalid_distance, [] { validate_instance(2, {0, NAN, NAN, 0}, {1, 1}); });
  expect_kind(ErrorKind::malformed_input, [] { validate_instance(2, {0, 1, 1}, {1, 1}); });
  expect_kind(ErrorKind::malformed_input, [] { validate_instance(0, {}, {}); });
}

TEST(Validate, TriangleCheckCanBeSkipped) {
  EXPECT_NO_THROW(validate_instance({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}, {1, 1, 1}, false));
}

TEST(Validate, ParallelTriangleSearchMatchesSerial) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 3 + rng() % 30;
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = 1.0 + (rng() % 100) / 40.0;
    }
    EXPECT_EQ(find_triangle_violation(n, d), serial::find_triangle_violation(n, d));
  }
}

TEST(Configuration, NearestLowestIndex) {
  const auto inst = line_instance({0, 1, 2}, {1, 1, 1});
  const auto config = make_configuration(inst, {2, 0});
  EXPECT_EQ(config.open, (std::vector<NodeId>{0, 2}));
  EXPECT_EQ(config.assign, (std::vector<NodeId>{0, 0, 2}));
  EXPECT_TRUE(config.is_open(2));
  EXPECT_FALSE(config.is_open(1));
  expect_kind(ErrorKind::empty_configuration, [&] { make_configuration(inst, {}); });
}

TEST(Radius, SinglePoint) {
  const auto inst = validate_instance(1, {0}, {5});
  EXPECT_DOUBLE_EQ(compute_r(inst)[0], 5.0);
}

TEST(Radius, Figure2) {
  const auto r = compute_r(figure2_instance());
  EXPECT_NEAR(r[0], 1.0, 1e-9);
  EXPECT_NEAR(r[1], 50.0, 1e-9);
}

TEST(Radius, ThreeCollinearAgainstBisection) {
  const auto inst = line_instance({0, 1, 2}, {3, 3, 3});
  const auto r = compute_r(inst);
  const double expected[] = {2.0, 5.0 / 3.0, 2.0};
  for (NodeId i = 0; i < 3; ++i) {
    EXPECT_NEAR(r[i], expected[i], 1e-12);
    EXPECT_NEAR(r[i], testing::bisect_radius(inst.row(i), inst.open_cost(i)), 1e-9 * r[i]);
  }
}

TEST(Radius, RandomAgainstBisectionAndFixedPoint) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto kind = seed % 2 ? GeneratorKind::graph_metric : GeneratorKind::euclidean;
    const auto inst = random_instance(seed, 2 + seed % 25, kind);
    const auto r = compute_r(inst);
    for (NodeId i = 0; i < inst.n(); ++i) {
      const double f = inst.open_cost(i);
      EXPECT_NEAR(r[i], testing::bisect_radius(inst.row(i), f), 1e-9 * r[i]);
      EXPECT_NEAR(testing::ball_excess(inst.row(i), r[i]), f, 1e-9 * std::max(1.0, f));
    }
  }
}

TEST(Radius, SerialMatchesParallel) {
  const auto inst = random_instance(17, 300);
  EXPECT_EQ(compute_r(inst), serial::compute_r(inst));
  const auto r = compute_r(inst);
  EXPECT_EQ(min_plus_transform(inst, r), serial::min_plus_transform(inst, r));
}

TEST(Rbar, Figure2) {
  const auto inst = figure2_instance();
  const auto rbar = compute_rbar(inst, compute_r(inst));
  EXPECT_NEAR(rbar[0], 1.0, 1e-9);
  EXPECT_NEAR(rbar[1], 2.0, 1e-9);
}

TEST(Rbar, ThreeCollinearByEnumeration) {
  const auto inst = line_instance({0, 1, 2}, {3, 3, 3});
  const auto r = compute_r(inst);
  const auto rbar = compute_rbar(inst, r);
  for (NodeId i = 0; i < 3; ++i) {
    double best = r[i];
    for (NodeId j = 0; j < 3; ++j) best = std::min(best, inst.dist(i, j) + r[j]);
    EXPECT_DOUBLE_EQ(rbar[i], best);
  }
  EXPECT_NEAR(rbar[0], 2.0, 1e-12);
  EXPECT_NEAR(rbar[1], 5.0 / 3.0, 1e-12);
  EXPECT_NEAR(rbar[2], 2.0, 1e-12);
}

TEST(Rbar, BelowRAndIdempotent) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = random_instance(seed, 5 + seed, GeneratorKind::graph_metric);
    const auto r = compute_r(inst);
    const auto rbar = compute_rbar(inst, r);
    const auto again = min_plus_transform(inst, rbar);
    for (NodeId i = 0; i < inst.n(); ++i) {
      EXPECT_LE(rbar[i], r[i]);
      EXPECT_NEAR(again[i], rbar[i], 1e-12 * rbar[i]);
    }
  }
}

TEST(Classes, Examples) {
  EXPECT_EQ(class_partition(std::vector<double>{1, 1.8, 3.0}, 1.0), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(class_partition(std::vector<double>{2, 2, 2}, 2.0), (std::vector<int>{0, 0, 0}));
  EXPECT_EQ(class_partition(std::vector<double>{1, 50}, 1.0), (std::vector<int>{0, 7}));
  EXPECT_THROW(class_partition(std::vector<double>{1}, 0.0), Error);
}

TEST(Classes, DefiningInequalityOnBoundaries) {
  std::vector<double> r;
  for (int k = 0; k < 40; ++k) {
    const double edge = std::pow(kC0, k);
    r.insert(r.end(), {edge, std::nextafter(edge, 0.0), std::nextafter(edge, 1e300)});
  }
  const auto classes = class_partition(r, 1.0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] < 1.0) continue;
    EXPECT_LE(std::pow(kC0, classes[i]), r[i]) << r[i];
    EXPECT_LT(r[i], std::pow(kC0, classes[i] + 1)) << r[i];
  }
}

TEST(Charge, Figure2) {
  const auto inst = figure2_instance();
  const auto r = compute_r(inst);
  const auto config = make_configuration(inst, {0});
  EXPECT_NEAR(charge(inst, r, 0, config), 1.0, 1e-9);
  EXPECT_NEAR(charge(inst, r, 1, config), 1.0, 1e-9);
  EXPECT_NEAR(facloc_cost(inst, config), 2.0, 1e-12);
}

TEST(Charge, IsolatedFacilityChargesItsRadius) {
  const auto inst = line_instance({0, 10, 20}, {1, 1, 1});
  const auto r = compute_r(inst);
  const auto config = make_configuration(inst, {0, 1, 2});
  for (NodeId i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(charge(inst, r, i, config), r[i]);
}

TEST(Charge, MatchesDirectFormulaAndSumsToCost) {
  std::mt19937_64 rng(6);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = random_instance(seed, seed % 2 ? 6 : 8);
    const auto r = compute_r(inst);
    std::vector<NodeId> open;
    while (open.empty()) {
      for (NodeId i = 0; i < inst.n(); ++i) {
        if (rng() % 2) open.push_back(i);
      }
    }
    const auto config = make_configuration(inst, open);
    double total = 0.0;
    for (NodeId i = 0; i < inst.n(); ++i) {
      const double c = charge(inst, r, i, config);
      EXPECT_NEAR(c, testing::direct_charge(inst, r, i, open), 1e-12 * std::max(1.0, c));
      EXPECT_GE(c, 0.0);
      total += c;
    }
    const double cost = facloc_cost(inst, config);
    EXPECT_NEAR(cost, testing::direct_cost(inst, open), 1e-12 * cost);
    EXPECT_NEAR(total, cost, 1e-9 * cost);
  }
}

TEST(Cost, AllOpenIsSumOfCosts) {
  const auto inst = random_instance(3, 9);
  std::vector<NodeId> all(inst.n());
  std::iota(all.begin(), all.end(), 0);
  double f = 0.0;
  for (NodeId i = 0; i < inst.n(); ++i) f += inst.open_cost(i);
  EXPECT_DOUBLE_EQ(facloc_cost(inst, make_configuration(inst, all)), f);
}

TEST(LowerBound, Examples) {
  EXPECT_NEAR(lower_bound(figure2_instance()), 0.5, 1e-9);
  EXPECT_NEAR(lower_bound(validate_instance(1, {0}, {5})), 5.0 / 6.0, 1e-12);
}

TEST(LowerBound, BelowEnumeratedOptimum) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = random_instance(seed, 8, seed % 3 ? GeneratorKind::euclidean : GeneratorKind::graph_metric);
    EXPECT_LE(lower_bound(inst), testing::enumerate_opt(inst) * (1 + 1e-9));
  }
}

TEST(Scaling, CovariantUnderUniformScaling) {
  const double lambda = 3.75;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = random_instance(seed, 8);
    std::vector<double> d(inst.matrix().begin(), inst.matrix().end());
    std::vector<double> f(inst.open_costs().begin(), inst.open_costs().end());
    for (auto& x : d) x *= lambda;
    for (auto& x : f) x *= lambda;
    const auto scaled = validate_instance(inst.n(), d, f);
    const auto a = make_radii_profile(inst);
    const auto b = make_radii_profile(scaled);
    for (NodeId i = 0; i < inst.n(); ++i) {
      EXPECT_NEAR(b.r[i], lambda * a.r[i], 1e-12 * b.r[i]);
      EXPECT_NEAR(b.rbar[i], lambda * a.rbar[i], 1e-12 * b.rbar[i]);
    }
    EXPECT_EQ(a.class_of, b.class_of);
    const auto ca = make_configuration(inst, {0, 2});
    const auto cb = make_configuration(scaled, {0, 2});
    EXPECT_NEAR(facloc_cost(scaled, cb), lambda * facloc_cost(inst, ca), 1e-12 * facloc_cost(scaled, cb));
  }
}

}  // namespace
}  // namespace cfl
