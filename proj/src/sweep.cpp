#include "cfl/sweep.hpp"

#include <exception>
#include <numeric>

#include <fmt/ostream.h>

#include "cfl/baselines.hpp"
#include "cfl/cost.hpp"
#include "cfl/facloc.hpp"

namespace cfl {
namespace {

auto run_cell(const SweepOptions& options, std::size_t n, std::uint64_t seed) -> SweepRow {
  GeneratorSpec spec = options.base;
  spec.n = n;
  spec.seed = seed;
  const auto inst = generate(spec);
  SolveOptions solve_options;
  solve_options.seed = seed;
  solve_options.parallel = false;
  const auto result = solve(inst, solve_options);

  SweepRow row;
  row.n = n;
  row.seed = seed;
  row.rounds = result.rounds;
  row.rs_iterations = result.ruling.iterations;
  row.cost = result.cost;
  row.sum_rbar = std::accumulate(result.radii.rbar.begin(), result.radii.rbar.end(), 0.0);
  row.rbar_ratio = row.cost / row.sum_rbar;
  row.mp_cost = facloc_cost(inst, mettu_plaxton(inst, result.radii.r));
  if (n <= options.opt_limit) row.opt_cost = serial::brute_force_opt(inst, options.opt_limit).cost;
  return row;
}

}  // namespace

auto run_sweep(const SweepOptions& options) -> std::vector<SweepRow> {
  const std::size_t cells = options.ns.size() * options.seeds;
  std::vector<SweepRow> rows(cells);
  std::vector<std::exception_ptr> errors(cells);
#pragma omp parallel for schedule(dynamic, 1) if (options.parallel)
  for (std::size_t c = 0; c < cells; ++c) {
    try {
      rows[c] = run_cell(options, options.ns[c / options.seeds], c % options.seeds);
    } catch (...) {
      errors[c] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "n,seed,rounds,rs_iterations,cost,sum_rbar,lemma5_ratio,mp_cost,opt_cost\n";
  for (const auto& r : rows) {
    fmt::print(out, "{},{},{},{},{},{},{},{},{}\n", r.n, r.seed, r.rounds, r.rs_iterations, r.cost,
               r.sum_rbar, r.rbar_ratio, r.mp_cost,
               r.opt_cost ? fmt::format("{}", *r.opt_cost) : std::string{});
  }
}

}  // namespace cfl
