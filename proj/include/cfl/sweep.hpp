#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "cfl/generate.hpp"

namespace cfl {

// One bench cell: instance generated from (base spec, n, seed), solved with
// the same seed.
struct SweepRow {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::uint64_t rounds = 0;
  std::uint64_t rs_iterations = 0;
  double cost = 0.0;
  double sum_rbar = 0.0;
  double rbar_ratio = 0.0;  // cost / sum_rbar, the "lemma5_ratio" CSV column
  double mp_cost = 0.0;
  std::optional<double> opt_cost;  // only up to opt_limit
  auto operator==(const SweepRow&) const -> bool = default;
};

struct SweepOptions {
  std::vector<std::size_t> ns;
  std::uint64_t seeds = 1;  // seeds 0 .. seeds-1
  GeneratorSpec base;
  std::size_t opt_limit = 12;
  bool parallel = true;  // cells in parallel; rows are returned in (n, seed) order
};

auto run_sweep(const SweepOptions& options) -> std::vector<SweepRow>;

// Header: n,seed,rounds,rs_iterations,cost,sum_rbar,lemma5_ratio,mp_cost,opt_cost
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace cfl
