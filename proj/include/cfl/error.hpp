#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cfl {

enum class ErrorKind {
  malformed_input,
  non_zero_diagonal,
  asymmetric_distance,
  invalid_distance,
  zero_distance_between_distinct_points,
  triangle_violation,
  non_positive_opening_cost,
  empty_configuration,
  instance_too_large,
  non_positive_minimum_radius,
  bandwidth_exceeded,
  link_overuse,
  round_limit_exceeded,
  invalid_spec,
};

auto to_string(ErrorKind kind) -> std::string_view;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  [[nodiscard]] auto kind() const noexcept -> ErrorKind { return kind_; }

 private:
  ErrorKind kind_;
};

// Carries the lexicographically first (i, j, k) with d(i,j) + d(j,k) < d(i,k).
class TriangleViolation : public Error {
 public:
  TriangleViolation(std::size_t i, std::size_t j, std::size_t k);

  [[nodiscard]] auto witness() const noexcept -> const std::array<std::size_t, 3>& {
    return witness_;
  }

 private:
  std::array<std::size_t, 3> witness_;
};

}  // namespace cfl
