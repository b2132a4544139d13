// JSON formats of the command-line tool: graph files, parameter arrays and
// run reports.

#pragma once

#include <optional>
#include <string>

#include "dpg/check.hpp"
#include "dpg/leonard.hpp"
#include "dpg/polar.hpp"
#include "json.hpp"

namespace dpgtool {

using nlohmann::json;

inline constexpr const char* kReportVersion = "1.0";

// {"family", "D", "b", "e", "vertices": [hex], "adjacency": [hex rows]}
json graph_to_json(const dpg::PolarGraph& pg);

struct LoadedGraph {
  dpg::FormSpec spec;
  dpg::Graph graph;
};

// Throws dpg::InputError on malformed input.
LoadedGraph graph_from_json(const json& j);

// Scalars are strings in the exact textual format or JSON integers.
dpg::ExactScalar scalar_from_json(const json& j, const std::string& what);
json scalar_to_json(const dpg::ExactScalar& x);
json vector_to_json(const dpg::Vector& v);

struct LeonardInput {
  dpg::ParameterArray array;
  std::optional<dpg::DqkParams> dqk;       // from "dqk"
  std::optional<dpg::AwHint> hint;         // from "scalars"
};

// {"d", "theta", "theta_star", "phi", "phi2", "scalars": {...}} and/or
// {"dqk": {"q", "d", "h", "h_star", "kappa", "kappa_star", "upsilon"}}.
LeonardInput leonard_input_from_json(const json& j);
json array_to_json(const dpg::ParameterArray& pa);
json params_to_json(const dpg::DqkParams& p);

json check_to_json(const dpg::Check& c);

// {version, input, checks, summary}; extra fields are merged into summary.
json make_report(const json& input, const dpg::CheckList& checks, const json& extra, double elapsed_ms);

// 0 when nothing failed, otherwise 1.
int exit_code(const dpg::CheckList& checks);

json read_json_file(const std::string& path);

}  // namespace dpgtool
