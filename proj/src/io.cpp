#include "cfl/io.hpp"

#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "cfl/cost.hpp"

namespace cfl::io {
namespace {

auto malformed(const std::string& what) -> Error { return Error(ErrorKind::malformed_input, what); }

template <typename T>
auto get(const json& obj, const char* key) -> T {
  if (!obj.is_object() || !obj.contains(key)) throw malformed(fmt::format("missing field '{}'", key));
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw malformed(fmt::format("field '{}': {}", key, e.what()));
  }
}

}  // namespace

auto read_json(const std::filesystem::path& path) -> json {
  std::ifstream in(path);
  if (!in) throw malformed(fmt::format("cannot open '{}'", path.string()));
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw malformed(fmt::format("'{}': {}", path.string(), e.what()));
  }
}

void write_json(const std::filesystem::path& path, const json& value) {
  std::ofstream out(path);
  if (!out) throw malformed(fmt::format("cannot write '{}'", path.string()));
  out << value.dump(2) << '\n';
}

auto instance_to_json(const MetricInstance& inst) -> json {
  json d = json::array();
  for (NodeId i = 0; i < inst.n(); ++i) {
    auto row = inst.row(i);
    d.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return {{"n", inst.n()}, {"f", inst.open_costs()}, {"d", std::move(d)}};
}

auto instance_from_json(const json& value, bool check_triangle) -> MetricInstance {
  const auto n = get<std::size_t>(value, "n");
  auto f = get<std::vector<double>>(value, "f");
  auto rows = get<std::vector<std::vector<double>>>(value, "d");
  if (f.size() != n) throw malformed(fmt::format("'f' has {} entries, expected {}", f.size(), n));
  if (rows.size() != n) throw malformed(fmt::format("'d' has {} rows, expected {}", rows.size(), n));
  return validate_instance(rows, std::move(f), check_triangle);
}

auto graph_to_json(const Graph& g) -> json {
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"n", g.n()}, {"edges", std::move(edges)}};
}

auto graph_from_json(const json& value) -> Graph {
  const auto n = get<std::size_t>(value, "n");
  auto raw = get<std::vector<std::array<std::int64_t, 2>>>(value, "edges");
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (auto [u, v] : raw) {
    if (u < 0 || v < 0) throw malformed("negative node id in edge list");
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  return make_graph(n, edges);
}

auto trace_to_json(const congest::Trace& trace) -> json {
  json per_round = json::array();
  for (const auto& s : trace.per_round) {
    per_round.push_back({{"messages", s.messages}, {"max_payload_bits", s.max_payload_bits}});
  }
  return {{"rounds", trace.rounds}, {"messages", trace.messages_total}, {"per_round", std::move(per_round)}};
}

auto ruling_run_to_json(const RulingSetRun& run) -> json {
  json iterations = json::array();
  for (const auto& it : run.per_iteration) {
    json rec = {{"m", it.m}, {"q", it.q}, {"e_test", it.e_test}, {"accepted", it.accepted}};
    if (!it.test_set.empty() || !it.removed.empty()) {
      rec["test_set"] = it.test_set;
      rec["removed"] = it.removed;
    }
    iterations.push_back(std::move(rec));
  }
  json crossings = json::array();
  for (const auto& c : run.thresholds_crossed) crossings.push_back({{"k", c.k}, {"iteration", c.iteration}});
  return {{"result", run.result},
          {"iterations", run.iterations},
          {"per_iteration", std::move(iterations)},
          {"final_m", run.final_m},
          {"thresholds_crossed", std::move(crossings)},
          {"rounds", run.rounds},
          {"messages", run.messages}};
}

auto audit_to_json(const Audit& audit) -> json {
  return {{"passed", audit.passed()},
          {"max_connection_slack", audit.max_connection_slack},
          {"max_contribution_slack", audit.max_contribution_slack},
          {"connection_bound", kConnectionBound},
          {"contribution_bound", kContributionBound},
          {"connection_violations", audit.connection_violations},
          {"contribution_violations", audit.contribution_violations},
          {"overlap_violations", audit.overlap_violations}};
}

auto solve_result_to_json(const SolveResult& result) -> json {
  double sum_rbar = 0.0;
  for (double v : result.radii.rbar) sum_rbar += v;
  return {{"open", result.config.open},
          {"assign", result.config.assign},
          {"cost", result.cost},
          {"rounds", result.rounds},
          {"messages", result.messages},
          {"sum_rbar", sum_rbar},
          {"ruling_set", result.ruling_set},
          {"audit", audit_to_json(result.audit)},
          {"ruling", ruling_run_to_json(result.ruling)}};
}

auto configuration_to_json(const MetricInstance& inst, const Configuration& config) -> json {
  return {{"open", config.open}, {"assign", config.assign}, {"cost", facloc_cost(inst, config)}};
}

auto opt_result_to_json(const OptResult& result) -> json {
  return {{"open", result.config.open},
          {"assign", result.config.assign},
          {"cost", result.cost},
          {"enumerated", result.enumerated}};
}

auto recheck_solve_json(const MetricInstance& inst, const json& stored) -> std::string {
  try {
    const auto open = get<std::vector<NodeId>>(stored, "open");
    for (NodeId j : open) {
      if (j >= inst.n()) return fmt::format("open facility {} out of range", j);
    }
    const auto config = make_configuration(inst, open);
    if (stored.contains("assign") && get<std::vector<NodeId>>(stored, "assign") != config.assign) {
      return "stored assignment differs from nearest-open assignment";
    }
    const double cost = facloc_cost(inst, config);
    const double stored_cost = get<double>(stored, "cost");
    if (std::abs(cost - stored_cost) > kRelTol * std::max(1.0, std::abs(cost))) {
      return fmt::format("stored cost {} but recomputed {}", stored_cost, cost);
    }
    const auto audit = audit_configuration(inst, make_radii_profile(inst), config);
    if (!audit.passed()) return "audit fails on the stored configuration";
    if (stored.contains("audit") && get<bool>(stored.at("audit"), "passed") != audit.passed()) {
      return "stored audit verdict differs";
    }
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace cfl::io
