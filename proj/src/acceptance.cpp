#include "cfl/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <memory>
#include <numeric>
#include <random>

#include <fmt/ostream.h>
#include <fmt/ranges.h>

#include "cfl/baselines.hpp"
#include "cfl/cost.hpp"
#include "cfl/facloc.hpp"
#include "cfl/generate.hpp"
#include "cfl/io.hpp"
#include "cfl/radii.hpp"
#include "cfl/ruling_set.hpp"
#include "cfl/sparse_mis.hpp"

namespace cfl {
namespace {

using Clock = std::chrono::steady_clock;

struct Check {
  bool passed = true;
  std::string detail;
};

auto close(double a, double b, double tol = 1e-9) -> bool {
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

auto sum(const std::vector<double>& v) -> double { return std::accumulate(v.begin(), v.end(), 0.0); }

// Small random instance: kind, size, and cost scale all drawn from `rng`.
auto random_instance(std::mt19937_64& rng, std::size_t n_min, std::size_t n_max) -> MetricInstance {
  static constexpr GeneratorKind kinds[] = {GeneratorKind::euclidean, GeneratorKind::graph_metric,
                                            GeneratorKind::uniform_f};
  GeneratorSpec spec;
  spec.kind = kinds[rng() % 3];
  spec.n = n_min + rng() % (n_max - n_min + 1);
  spec.dim = 1 + rng() % 3;
  spec.cost_low = 0.05;
  spec.cost_high = 0.1 + 5.0 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  if (spec.kind == GeneratorKind::uniform_f) spec.cost_low = spec.cost_high / 4;
  spec.seed = rng();
  return generate(spec);
}

// Random spanning subgraph for ruling-set runs.
auto random_subgraph(std::size_t n, std::uint64_t seed) -> Graph {
  static constexpr double densities[] = {0.02, 0.1, 0.3, 0.6};
  return random_gnp(n, densities[seed % 4], seed);
}

auto criterion1() -> Check {
  Check c;
  const auto inst = figure2_instance();
  const auto radii = make_radii_profile(inst);
  auto fail = [&](std::string what) {
    if (c.passed) c.detail = std::move(what);
    c.passed = false;
  };
  if (!close(radii.r[0], 1) || !close(radii.r[1], 50)) fail("r differs from (1, 50)");
  if (!close(radii.rbar[0], 1) || !close(radii.rbar[1], 2)) fail("r-bar differs from (1, 2)");
  const auto opt = brute_force_opt(inst);
  if (opt.config.open != std::vector<NodeId>{0} || !close(opt.cost, 2)) fail("OPT differs from ({x_1}, 2)");
  if (mettu_plaxton(inst).open != std::vector<NodeId>{0}) fail("Mettu-Plaxton differs from {x_1}");
  for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
    const auto res = solve(inst, {.seed = seed});
    if (res.config.open != std::vector<NodeId>{0} || !close(res.cost, 2)) {
      fail(fmt::format("solve with seed {} gives cost {}", seed, res.cost));
    }
  }
  if (c.passed) c.detail = "r=(1,50) rbar=(1,2) OPT=MP=solve={x_1} cost 2 over 5 seeds";
  return c;
}

auto criterion2() -> Check {
  std::mt19937_64 rng(2);
  double worst = 0.0;
  std::size_t bad = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto inst = random_instance(rng, 1, 20);
    const auto r = compute_r(inst);
    std::vector<NodeId> open;
    while (open.empty()) {
      for (NodeId i = 0; i < inst.n(); ++i) {
        if (rng() % 3 == 0) open.push_back(i);
      }
    }
    const auto config = make_configuration(inst, open);
    double charges = 0.0;
    for (NodeId i = 0; i < inst.n(); ++i) charges += charge(inst, r, i, config);
    const double cost = facloc_cost(inst, config);
    const double rel = std::abs(cost - charges) / cost;
    worst = std::max(worst, rel);
    if (rel > 1e-9) ++bad;
  }
  return {bad == 0, fmt::format("1000 pairs, {} violations, max relative gap {:.2e}", bad, worst)};
}

struct SmallCase {
  MetricInstance inst;
  OptResult opt;
};

auto small_cases() -> const std::vector<SmallCase>& {
  static const auto cases = [] {
    std::mt19937_64 rng(3);
    std::vector<SmallCase> out;
    for (int t = 0; t < 300; ++t) {
      auto inst = random_instance(rng, 1, 10);
      auto opt = brute_force_opt(inst);
      out.push_back({std::move(inst), std::move(opt)});
    }
    return out;
  }();
  return cases;
}

auto criterion3() -> Check {
  std::size_t bad = 0;
  std::uint64_t configurations = 0;
  double tightest = 0.0;
  for (const auto& [inst, opt] : small_cases()) {
    const double lb = lower_bound(inst);
    if (lb > opt.cost * (1 + 1e-9)) ++bad;
    tightest = std::max(tightest, lb / opt.cost);
    const std::uint64_t full = (std::uint64_t{1} << inst.n()) - 1;
    for (std::uint64_t mask = 1; mask <= full; ++mask, ++configurations) {
      if (lb > subset_cost(inst, mask) * (1 + 1e-9)) ++bad;
    }
  }
  return {bad == 0, fmt::format("300 instances, {} configurations, {} violations, max LB/OPT {:.4f}",
                                configurations, bad, tightest)};
}

auto criterion4() -> Check {
  std::size_t bad_ratio = 0;
  std::size_t bad_sep = 0;
  double worst = 0.0;
  for (const auto& [inst, opt] : small_cases()) {
    const auto r = compute_r(inst);
    const auto mp = mettu_plaxton(inst, r);
    const double ratio = facloc_cost(inst, mp) / opt.cost;
    worst = std::max(worst, ratio);
    if (ratio > 3 * (1 + 1e-9)) ++bad_ratio;
    if (find_separation_violation(inst, r, mp)) ++bad_sep;
  }
  return {bad_ratio == 0 && bad_sep == 0,
          fmt::format("300 instances, ratio violations {}, separation violations {}, max MP/OPT {:.4f}",
                      bad_ratio, bad_sep, worst)};
}

auto criterion5() -> Check {
  std::mt19937_64 rng(5);
  std::size_t runs = 0;
  std::size_t bad = 0;
  double max_conn = 0.0;
  double max_contrib = 0.0;
  double max_aggregate = 0.0;
  for (std::size_t n : {10, 50, 200}) {
    for (int t = 0; t < 100; ++t) {
      const auto inst = random_instance(rng, n, n);
      for (std::uint64_t seed : {0, 1}) {
        const auto res = solve(inst, {.seed = seed});
        ++runs;
        const double sum_rbar = sum(res.radii.rbar);
        const double aggregate = res.cost / sum_rbar;
        max_conn = std::max(max_conn, res.audit.max_connection_slack);
        max_contrib = std::max(max_contrib, res.audit.max_contribution_slack);
        max_aggregate = std::max(max_aggregate, aggregate);
        if (!res.audit.passed() || aggregate > kAggregateBound * (1 + 1e-9) ||
            res.cost < sum_rbar / 6 * (1 - 1e-9)) {
          ++bad;
        }
      }
    }
  }
  return {bad == 0,
          fmt::format("{} runs, {} violations, max D/rbar {:.3f} (<= {:.2f}), max overlap/rbar {:.3f} "
                      "(<= {:.3f}), max cost/sum rbar {:.3f} (<= {:.2f})",
                      runs, bad, max_conn, kConnectionBound, max_contrib, kContributionBound,
                      max_aggregate, kAggregateBound)};
}

auto criterion6() -> Check {
  constexpr double kLimit = 220.2;
  std::mt19937_64 rng(6);
  std::vector<double> ratios;
  for (int t = 0; t < 200; ++t) {
    const auto inst = random_instance(rng, 2, 12);
    const auto opt = brute_force_opt(inst);
    ratios.push_back(solve(inst, {.seed = static_cast<std::uint64_t>(t)}).cost / opt.cost);
  }
  std::ranges::sort(ratios);
  const auto bad = std::ranges::count_if(ratios, [&](double x) { return x > kLimit; });
  auto pct = [&](double q) { return ratios[static_cast<std::size_t>(q * (ratios.size() - 1))]; };
  return {bad == 0, fmt::format("200 instances, ratio min {:.3f} median {:.3f} p95 {:.3f} max {:.3f} "
                                "(bound {})",
                                ratios.front(), pct(0.5), pct(0.95), ratios.back(), kLimit)};
}

auto criterion7() -> Check {
  std::size_t runs = 0;
  std::size_t bad = 0;
  std::uint64_t seed = 0;
  for (std::size_t n : {64, 256}) {
    for (int t = 0; t < 100; ++t, ++seed) {
      std::mt19937_64 rng(seed);
      // Density and membership chosen so that e[M] spans 0 .. 4n.
      const double p = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      const auto g = random_gnp(n, p, seed);
      const double target = std::uniform_real_distribution<double>(0.0, 4.0 * n)(rng);
      const double member_p = std::min(1.0, std::sqrt(2.0 * target / std::max(1e-9, p * n * n)));
      auto members = std::make_unique<bool[]>(n);
      for (std::size_t i = 0; i < n; ++i) members[i] = std::bernoulli_distribution(member_p)(rng);
      std::span<const bool> m(members.get(), n);
      auto e = induced_edge_count(g, m);
      while (e > 4 * n) {
        // Thin M until it qualifies.
        for (std::size_t i = 0; i < n && e > 4 * n; ++i) {
          if (members[i] && rng() % 2 == 0) {
            members[i] = false;
            e = induced_edge_count(g, m);
          }
        }
      }
      SparseMisProbe probe(n);
      const auto res = sparse_mis::run(g, m, seed, &probe);
      ++runs;
      const std::size_t slots = (e + n - 1) / n;
      const std::size_t max_received = *std::ranges::max_element(probe.received);
      std::vector<NodeId> order;
      for (NodeId i = 0; i < n; ++i) {
        if (m[i]) order.push_back(i);
      }
      if (res.trace.rounds > slots + 6 || max_received > slots + 1 || res.mis != greedy_mis(g, order)) {
        ++bad;
      }
    }
  }
  return {bad == 0, fmt::format("{} runs with e[M] <= 4n, {} violations", runs, bad)};
}

auto criterion8() -> Check {
  std::size_t runs = 0;
  std::size_t rejected = 0;
  const std::pair<std::size_t, int> plan[] = {{64, 300}, {256, 150}, {1024, 50}};
  for (auto [n, count] : plan) {
    for (int t = 0; t < count; ++t) {
      const auto seed = static_cast<std::uint64_t>(n * 1000 + t);
      const auto g = random_subgraph(n, seed);
      const auto run = ruling_set::run(g, {.seed = seed});
      ++runs;
      if (!verify_ruling_set(g, run.result, 2).accepted) ++rejected;
    }
  }
  return {rejected == 0, fmt::format("{} runs over n in {{64, 256, 1024}}, {} rejections", runs, rejected)};
}

auto criterion9() -> Check {
  constexpr std::size_t n = 256;
  const auto g = random_gnp(n, 0.3, 9);
  std::vector<double> e;
  std::size_t rejected = 0;
  for (std::uint64_t seed = 0; seed < 600; ++seed) {
    const auto run = ruling_set::run(g, {.seed = seed});
    const auto& first = run.per_iteration.front();
    e.push_back(static_cast<double>(first.e_test));
    if (!first.accepted) ++rejected;
  }
  const double k = static_cast<double>(e.size());
  const double mean = sum(e) / k;
  double var = 0.0;
  for (double x : e) var += (x - mean) * (x - mean);
  var /= k - 1;
  const double se = std::sqrt(var / k);
  const double z = (mean - static_cast<double>(n)) / se;
  const double frac = static_cast<double>(rejected) / k;
  return {std::abs(z) <= 3.0 && frac <= 0.30,
          fmt::format("m={} over {} first iterations: mean e_T {:.2f} vs n={} (z={:.2f}), rejection "
                      "fraction {:.3f}",
                      g.edge_count(), e.size(), mean, n, z, frac)};
}

auto criterion10() -> Check {
  Check c;
  std::vector<std::string> parts;
  for (std::size_t n : {256, 1024, 4096}) {
    const int K = threshold_count(n);
    double iterations = 0.0;
    std::vector<double> spans(static_cast<std::size_t>(K), 0.0);
    constexpr int kSeeds = 100;
    for (int s = 0; s < kSeeds; ++s) {
      const auto seed = static_cast<std::uint64_t>(s);
      const auto g = random_gnp(n, 0.1, n * 7919 + seed);
      const auto run = ruling_set::run(g, {.seed = seed});
      iterations += static_cast<double>(run.iterations);
      const auto measured = measure_thresholds(run, n);
      for (std::size_t k = 0; k < spans.size(); ++k) spans[k] += static_cast<double>(measured[k]);
    }
    iterations /= kSeeds;
    double worst_span = 0.0;
    for (auto& s : spans) worst_span = std::max(worst_span, s /= kSeeds);
    const double limit = 2.0 * K + 4;
    if (iterations > limit || worst_span > 4.0) c.passed = false;
    parts.push_back(fmt::format("n={}: iterations {:.2f} (<= {}), max mean span {:.2f}", n, iterations,
                                limit, worst_span));
  }
  c.detail = fmt::format("{}", fmt::join(parts, "; "));
  return c;
}

auto criterion11() -> Check {
  std::size_t compared = 0;
  std::size_t differ = 0;
  std::mt19937_64 rng(11);
  for (std::size_t n : {10, 50, 200}) {
    for (int t = 0; t < 10; ++t) {
      const auto inst = random_instance(rng, n, n);
      const auto seed = rng();
      const auto a = io::solve_result_to_json(solve(inst, {.seed = seed})).dump();
      const auto b = io::solve_result_to_json(solve(inst, {.seed = seed})).dump();
      const auto serial = io::solve_result_to_json(solve(inst, {.seed = seed, .parallel = false})).dump();
      compared += 2;
      differ += (a != b) + (a != serial);
    }
  }
  for (std::size_t n : {64, 256, 1024}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto g = random_subgraph(n, seed);
      const ruling_set::Options options{.seed = seed, .record_sets = true};
      const auto a = io::ruling_run_to_json(ruling_set::run(g, options)).dump();
      const auto b = io::ruling_run_to_json(ruling_set::run(g, options)).dump();
      ++compared;
      differ += a != b;
    }
  }
  return {differ == 0, fmt::format("{} repeated runs compared as JSON, {} differ", compared, differ)};
}

struct Criterion {
  int id;
  const char* title;
  double time_limit;  // seconds, 0 = none
  std::function<Check()> run;
};

}  // namespace

auto run_acceptance(std::ostream& out, const std::vector<int>& only) -> std::vector<CriterionOutcome> {
  const Criterion criteria[] = {
      {1, "two-point regression", 1.0, criterion1},
      {2, "charge identity", 5.0, criterion2},
      {3, "lower bound sum(rbar)/6", 60.0, criterion3},
      {4, "Mettu-Plaxton 3-approximation", 0.0, criterion4},
      {5, "per-node connection and overlap bounds", 0.0, criterion5},
      {6, "end-to-end approximation", 0.0, criterion6},
      {7, "sparse MIS round bound", 0.0, criterion7},
      {8, "ruling-set validity", 0.0, criterion8},
      {9, "sampling statistics", 0.0, criterion9},
      {10, "round scaling", 600.0, criterion10},
      {11, "determinism", 0.0, criterion11},
  };
  std::vector<CriterionOutcome> outcomes;
  for (const auto& c : criteria) {
    if (!only.empty() && std::ranges::find(only, c.id) == only.end()) continue;
    const auto start = Clock::now();
    Check check;
    try {
      check = c.run();
    } catch (const std::exception& e) {
      check = {false, fmt::format("threw: {}", e.what())};
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (c.time_limit > 0 && seconds > c.time_limit) {
      check.passed = false;
      check.detail += fmt::format(" [over the {} s limit]", c.time_limit);
    }
    fmt::print(out, "{} criterion {:>2} {}: {} ({:.2f} s)\n", check.passed ? "PASS" : "FAIL", c.id,
               c.title, check.detail, seconds);
    out.flush();
    outcomes.push_back({c.id, c.title, check.passed, check.detail, seconds});
  }
  return outcomes;
}

}  // namespace cfl
