#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cfl/acceptance.hpp"
#include "cfl/baselines.hpp"
#include "cfl/facloc.hpp"
#include "cfl/generate.hpp"
#include "cfl/io.hpp"
#include "cfl/ruling_set.hpp"
#include "cfl/sweep.hpp"

namespace {

using cfl::io::json;

struct GenFlags {
  std::string kind = "euclidean";
  std::size_t n = 16;
  std::size_t dim = 2;
  double cost_low = 1.0;
  double cost_high = 10.0;
  std::uint64_t seed = 0;

  void attach(CLI::App* app, bool with_n = true) {
    app->add_option("--kind", kind, "euclidean, graph-metric, figure2 or uniform-f")->capture_default_str();
    if (with_n) app->add_option("--n", n, "number of points")->capture_default_str();
    app->add_option("--dim", dim, "dimension for euclidean points")->capture_default_str();
    app->add_option("--cost-low", cost_low)->capture_default_str();
    app->add_option("--cost-high", cost_high)->capture_default_str();
    app->add_option("--gen-seed", seed, "generator seed")->capture_default_str();
  }

  [[nodiscard]] auto spec() const -> cfl::GeneratorSpec {
    return {cfl::parse_generator_kind(kind), n, dim, cost_low, cost_high, seed};
  }
};

// --instance FILE wins over the generator flags.
auto load_or_generate(const std::string& path, const GenFlags& gen) -> cfl::MetricInstance {
  if (!path.empty()) return cfl::io::instance_from_json(cfl::io::read_json(path));
  return cfl::generate(gen.spec());
}

void emit(const json& value, const std::string& out) {
  if (out.empty()) {
    std::cout << value.dump(2) << '\n';
  } else {
    cfl::io::write_json(out, value);
  }
}

auto split_sizes(const std::string& list) -> std::vector<std::size_t> {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const auto comma = std::min(list.find(',', pos), list.size());
    const auto item = list.substr(pos, comma - pos);
    if (!item.empty()) out.push_back(std::stoull(item));
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed facility location on the congested clique"};
  app.require_subcommand(1);

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "generate an instance file");
  GenFlags gen_flags;
  gen_flags.attach(gen_cmd);
  std::string gen_out;
  gen_cmd->add_option("--out,-o", gen_out, "output path (stdout if omitted)");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "run the distributed algorithm");
  GenFlags solve_gen;
  solve_gen.attach(solve_cmd);
  std::string solve_instance;
  std::string solve_out;
  std::uint64_t solve_seed = 0;
  std::optional<std::uint64_t> solve_max_rounds;
  bool solve_check = false;
  solve_cmd->add_option("--instance,-i", solve_instance, "instance JSON");
  solve_cmd->add_option("--seed", solve_seed, "simulator seed")->capture_default_str();
  solve_cmd->add_option("--max-rounds", solve_max_rounds);
  solve_cmd->add_flag("--check", solve_check, "re-validate the result before writing it");
  solve_cmd->add_option("--out,-o", solve_out);

  // baseline
  auto* base_cmd = app.add_subcommand("baseline", "sequential reference solutions");
  GenFlags base_gen;
  base_gen.attach(base_cmd);
  std::string base_instance;
  std::string base_out;
  bool want_mp = false;
  bool want_opt = false;
  std::size_t opt_limit = cfl::kDefaultBruteForceLimit;
  base_cmd->add_option("--instance,-i", base_instance, "instance JSON");
  base_cmd->add_flag("--mp", want_mp, "Mettu-Plaxton greedy");
  base_cmd->add_flag("--opt", want_opt, "exhaustive optimum");
  base_cmd->add_option("--limit", opt_limit, "largest n for --opt")->capture_default_str();
  base_cmd->add_option("--out,-o", base_out);

  // ruling-set
  auto* rs_cmd = app.add_subcommand("ruling-set", "standalone 2-ruling set of a graph");
  std::string rs_graph;
  std::size_t rs_n = 256;
  double rs_p = 0.1;
  std::uint64_t rs_graph_seed = 0;
  std::uint64_t rs_seed = 0;
  bool rs_sets = false;
  std::string rs_out;
  rs_cmd->add_option("--graph,-g", rs_graph, "graph JSON {\"n\", \"edges\"}");
  rs_cmd->add_option("--n", rs_n, "G(n, p) size when no graph is given")->capture_default_str();
  rs_cmd->add_option("--p", rs_p, "G(n, p) edge probability")->capture_default_str();
  rs_cmd->add_option("--graph-seed", rs_graph_seed)->capture_default_str();
  rs_cmd->add_option("--seed", rs_seed, "simulator seed")->capture_default_str();
  rs_cmd->add_flag("--record-sets", rs_sets, "log test sets and removed nodes");
  rs_cmd->add_option("--out,-o", rs_out);

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "sweep n x seeds and write CSV");
  GenFlags bench_gen;
  bench_gen.attach(bench_cmd, false);
  std::string bench_ns = "64,256,1024";
  std::uint64_t bench_seeds = 10;
  std::size_t bench_opt_limit = 12;
  std::string bench_out;
  bench_cmd->add_option("--n", bench_ns, "comma-separated sizes")->capture_default_str();
  bench_cmd->add_option("--seeds", bench_seeds, "seeds 0..seeds-1 per size")->capture_default_str();
  bench_cmd->add_option("--opt-limit", bench_opt_limit, "brute-force OPT up to this n")->capture_default_str();
  bench_cmd->add_option("--out,-o", bench_out, "CSV path (stdout if omitted)");

  // accept
  auto* accept_cmd = app.add_subcommand("accept", "run the acceptance suite");
  std::vector<int> accept_only;
  accept_cmd->add_option("--only", accept_only, "criterion ids to run")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) {
      emit(cfl::io::instance_to_json(cfl::generate(gen_flags.spec())), gen_out);
    } else if (*solve_cmd) {
      const auto inst = load_or_generate(solve_instance, solve_gen);
      const auto result = cfl::solve(inst, {.seed = solve_seed, .max_rounds = solve_max_rounds});
      auto out = cfl::io::solve_result_to_json(result);
      if (solve_check) {
        if (auto problem = cfl::io::recheck_solve_json(inst, out); !problem.empty()) {
          throw cfl::Error(cfl::ErrorKind::malformed_input, problem);
        }
      }
      emit(out, solve_out);
    } else if (*base_cmd) {
      const auto inst = load_or_generate(base_instance, base_gen);
      if (!want_mp && !want_opt) want_mp = true;
      json mp;
      json opt;
      if (want_mp) mp = cfl::io::configuration_to_json(inst, cfl::mettu_plaxton(inst));
      if (want_opt) opt = cfl::io::opt_result_to_json(cfl::brute_force_opt(inst, opt_limit));
      if (want_mp && want_opt) {
        emit({{"mettu_plaxton", mp}, {"opt", opt}}, base_out);
      } else {
        emit(want_mp ? mp : opt, base_out);
      }
    } else if (*rs_cmd) {
      const auto g = rs_graph.empty() ? cfl::random_gnp(rs_n, rs_p, rs_graph_seed)
                                      : cfl::io::graph_from_json(cfl::io::read_json(rs_graph));
      const auto run = cfl::ruling_set::run(g, {.seed = rs_seed, .record_sets = rs_sets});
      auto out = cfl::io::ruling_run_to_json(run);
      const auto verdict = cfl::verify_ruling_set(g, run.result, 2);
      out["verified"] = verdict.accepted;
      emit(out, rs_out);
    } else if (*bench_cmd) {
      cfl::SweepOptions options;
      options.ns = split_sizes(bench_ns);
      options.seeds = bench_seeds;
      options.base = bench_gen.spec();
      options.opt_limit = bench_opt_limit;
      const auto rows = cfl::run_sweep(options);
      if (bench_out.empty()) {
        cfl::write_csv(std::cout, rows);
      } else {
        std::ofstream file(bench_out);
        cfl::write_csv(file, rows);
      }
    } else if (*accept_cmd) {
      const auto outcomes = cfl::run_acceptance(std::cout, accept_only);
      for (const auto& o : outcomes) {
        if (!o.passed) return 1;
      }
    }
  } catch (const cfl::Error& e) {
    json err = {{"error", std::string(cfl::to_string(e.kind()))}, {"message", e.what()}};
    std::cerr << err.dump() << '\n';
    return 2;
  } catch (const std::exception& e) {
    json err = {{"error", "InternalError"}, {"message", e.what()}};
    std::cerr << err.dump() << '\n';
    return 3;
  }
  return 0;
}
