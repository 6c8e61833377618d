#pragma once

#include <cstdint>
#include <string_view>

#include "cfl/metric.hpp"

namespace cfl {

enum class GeneratorKind { euclidean, graph_metric, figure2, uniform_f };

auto parse_generator_kind(std::string_view name) -> GeneratorKind;
auto to_string(GeneratorKind kind) -> std::string_view;

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::euclidean;
  std::size_t n = 16;
  std::size_t dim = 2;
  double cost_low = 1.0;
  double cost_high = 10.0;
  std::uint64_t seed = 0;
};

// Instances above this size skip the cubic triangle check on generation;
// both generators produce metrics by construction.
inline constexpr std::size_t kGeneratorTriangleCheckLimit = 1024;

// euclidean: uniform points in [0,1]^dim; graph_metric: shortest-path metric of
// a random connected weighted graph; figure2: two points at distance 1 with
// costs (1, 99); uniform_f: euclidean points, every cost equal to cost_low.
// Throws InvalidSpec for n < 1, dim < 1 or a non-positive/inverted cost range.
auto generate(const GeneratorSpec& spec) -> MetricInstance;

auto figure2_instance() -> MetricInstance;

}  // namespace cfl
