#pragma once

#include <cstdint>

namespace cfl {

constexpr auto splitmix64(std::uint64_t x) noexcept -> std::uint64_t {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// 53 random bits mapped to [0, 1); identical on every platform.
constexpr auto to_unit_interval(std::uint64_t bits) noexcept -> double {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Counter-based stream keyed by (seed, node, round). Two streams with the same
// key produce the same sequence no matter when or on which thread they run.
class CounterRng {
 public:
  constexpr CounterRng() = default;
  constexpr CounterRng(std::uint64_t seed, std::uint64_t node, std::uint64_t round) noexcept
      : key_(splitmix64(splitmix64(splitmix64(seed) ^ node) ^ (round * 0xd1b54a32d192ed03ULL))) {}

  constexpr auto next_u64() noexcept -> std::uint64_t { return splitmix64(key_ + counter_++); }
  constexpr auto uniform() noexcept -> double { return to_unit_interval(next_u64()); }
  constexpr auto bernoulli(double p) noexcept -> bool { return uniform() < p; }

 private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace cfl
