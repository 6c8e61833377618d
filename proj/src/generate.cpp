#include "cfl/generate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <random>
#include <string>

#include <fmt/format.h>

#include "cfl/random.hpp"

namespace cfl {
namespace {

class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : engine_(seed) {}
  auto operator()() -> double { return to_unit_interval(engine_()); }
  auto operator()(double lo, double hi) -> double { return lo + (hi - lo) * (*this)(); }
  auto index(std::size_t bound) -> std::size_t {
    return static_cast<std::size_t>((*this)() * static_cast<double>(bound));
  }

 private:
  std::mt19937_64 engine_;
};

auto draw_costs(const GeneratorSpec& spec, Uniform& rng) -> std::vector<double> {
  std::vector<double> f(spec.n);
  for (auto& c : f) c = spec.kind == GeneratorKind::uniform_f ? spec.cost_low : rng(spec.cost_low, spec.cost_high);
  return f;
}

auto euclidean(const GeneratorSpec& spec, Uniform& rng) -> std::vector<double> {
  const std::size_t n = spec.n;
  std::vector<double> pts(n * spec.dim);
  for (auto& x : pts) x = rng();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t a = 0; a < spec.dim; ++a) {
        const double diff = pts[i * spec.dim + a] - pts[j * spec.dim + a];
        s += diff * diff;
      }
      d[i * n + j] = d[j * n + i] = std::sqrt(s);
    }
  }
  return d;
}

// Random spanning tree plus ~3 extra edges per node, weights in [0.1, 1],
// completed by Dijkstra from every source.
auto graph_metric(const GeneratorSpec& spec, Uniform& rng) -> std::vector<double> {
  const std::size_t n = spec.n;
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  auto add = [&](std::size_t u, std::size_t v) {
    const double w = rng(0.1, 1.0);
    adj[u].emplace_back(v, w);
    adj[v].emplace_back(u, w);
  };
  for (std::size_t v = 1; v < n; ++v) add(rng.index(v), v);
  const double p = std::min(1.0, 3.0 / static_cast<double>(n));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (rng() < p) add(u, v);
    }
  }
  std::vector<double> d(n * n, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, std::size_t>;
  for (std::size_t s = 0; s < n; ++s) {
    auto row = d.begin() + static_cast<std::ptrdiff_t>(s * n);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    row[s] = 0.0;
    heap.emplace(0.0, s);
    while (!heap.empty()) {
      auto [du, u] = heap.top();
      heap.pop();
      if (du > row[u]) continue;
      for (auto [v, w] : adj[u]) {
        if (du + w < row[v]) {
          row[v] = du + w;
          heap.emplace(row[v], v);
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      d[i * n + j] = d[j * n + i] = std::min(d[i * n + j], d[j * n + i]);
    }
  }
  return d;
}

}  // namespace

auto parse_generator_kind(std::string_view name) -> GeneratorKind {
  if (name == "euclidean") return GeneratorKind::euclidean;
  if (name == "graph-metric") return GeneratorKind::graph_metric;
  if (name == "figure2") return GeneratorKind::figure2;
  if (name == "uniform-f") return GeneratorKind::uniform_f;
  throw Error(ErrorKind::invalid_spec, fmt::format("unknown generator kind '{}'", name));
}

auto to_string(GeneratorKind kind) -> std::string_view {
  switch (kind) {
    case GeneratorKind::euclidean: return "euclidean";
    case GeneratorKind::graph_metric: return "graph-metric";
    case GeneratorKind::figure2: return "figure2";
    case GeneratorKind::uniform_f: return "uniform-f";
  }
  return "unknown";
}

auto figure2_instance() -> MetricInstance {
  return validate_instance(2, {0.0, 1.0, 1.0, 0.0}, {1.0, 99.0});
}

auto generate(const GeneratorSpec& spec) -> MetricInstance {
  if (spec.kind == GeneratorKind::figure2) return figure2_instance();
  if (spec.n < 1) throw Error(ErrorKind::invalid_spec, "n must be at least 1");
  if (spec.dim < 1) throw Error(ErrorKind::invalid_spec, "dim must be at least 1");
  if (!(spec.cost_low > 0.0) || spec.cost_high < spec.cost_low) {
    throw Error(ErrorKind::invalid_spec, fmt::format("invalid cost range [{}, {}]",
                                                     spec.cost_low, spec.cost_high));
  }
  Uniform rng(spec.seed);
  auto d = spec.kind == GeneratorKind::graph_metric ? graph_metric(spec, rng) : euclidean(spec, rng);
  auto f = draw_costs(spec, rng);
  return validate_instance(spec.n, std::move(d), std::move(f),
                           spec.n <= kGeneratorTriangleCheckLimit);
}

}  // namespace cfl
