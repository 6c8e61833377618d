#include "cfl/error.hpp"

#include <fmt/format.h>

namespace cfl {

auto to_string(ErrorKind kind) -> std::string_view {
  switch (kind) {
    case ErrorKind::malformed_input: return "MalformedInput";
    case ErrorKind::non_zero_diagonal: return "NonZeroDiagonal";
    case ErrorKind::asymmetric_distance: return "AsymmetricDistance";
    case ErrorKind::invalid_distance: return "InvalidDistance";
    case ErrorKind::zero_distance_between_distinct_points:
      return "ZeroDistanceBetweenDistinctPoints";
    case ErrorKind::triangle_violation: return "TriangleViolation";
    case ErrorKind::non_positive_opening_cost: return "NonPositiveOpeningCost";
    case ErrorKind::empty_configuration: return "EmptyConfiguration";
    case ErrorKind::instance_too_large: return "InstanceTooLarge";
    case ErrorKind::non_positive_minimum_radius: return "NonPositiveMinimumRadius";
    case ErrorKind::bandwidth_exceeded: return "BandwidthExceeded";
    case ErrorKind::link_overuse: return "LinkOveruse";
    case ErrorKind::round_limit_exceeded: return "RoundLimitExceeded";
    case ErrorKind::invalid_spec: return "InvalidSpec";
  }
  return "Unknown";
}

TriangleViolation::TriangleViolation(std::size_t i, std::size_t j, std::size_t k)
    : Error(ErrorKind::triangle_violation,
            fmt::format("d({0},{1}) + d({1},{2}) < d({0},{2})", i, j, k)),
      witness_{i, j, k} {}

}  // namespace cfl
