#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "cfl/baselines.hpp"
#include "cfl/congest.hpp"
#include "cfl/facloc.hpp"
#include "cfl/graph.hpp"
#include "cfl/metric.hpp"
#include "cfl/ruling_set.hpp"

namespace cfl::io {

using nlohmann::json;

auto read_json(const std::filesystem::path& path) -> json;
void write_json(const std::filesystem::path& path, const json& value);

// {"n": int, "f": [reals], "d": [[reals]]}. Throws MalformedInput on shape or
// type errors and the validator's errors otherwise.
auto instance_to_json(const MetricInstance& inst) -> json;
auto instance_from_json(const json& value, bool check_triangle = true) -> MetricInstance;

// {"n": int, "edges": [[u, v], ...]}
auto graph_to_json(const Graph& g) -> json;
auto graph_from_json(const json& value) -> Graph;

auto trace_to_json(const congest::Trace& trace) -> json;
auto ruling_run_to_json(const RulingSetRun& run) -> json;
auto audit_to_json(const Audit& audit) -> json;
auto solve_result_to_json(const SolveResult& result) -> json;
auto opt_result_to_json(const OptResult& result) -> json;
auto configuration_to_json(const MetricInstance& inst, const Configuration& config) -> json;

// Recomputes cost, assignment and audit of a stored SolveResult against the
// instance. Returns an empty string when everything matches, otherwise a
// description of the first mismatch.
auto recheck_solve_json(const MetricInstance& inst, const json& stored) -> std::string;

}  // namespace cfl::io
