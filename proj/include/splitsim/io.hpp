#pragma once

// JSON forms of instances, graphs and certificates.
//
//   bipartite instance: {"left": L, "right": R, "edges": [[u, v], ...]}  (edges sorted)
//   graph:              {"kind": "graph", "nodes": n, "ids": [...], "edges": [[a, b], ...]}
//   certificate:        {"type": T, "values": [...], ...}
//     two-coloring   values "red" | "blue" per V-node; optional "epsilon" adds the band check
//     multicoloring  values int per V-node; "palette", "lambda"
//     orientation    values head node per edge; optional "max_discrepancy"
//     mis            values member nodes
//     coloring       values int per node; optional "palette"

#include <string>
#include <vector>

#include <json.hpp>

#include "splitsim/graph.hpp"
#include "splitsim/multicolor.hpp"
#include "splitsim/reductions.hpp"
#include "splitsim/verify.hpp"
#include "splitsim/weak_splitting.hpp"

namespace splitsim {

using nlohmann::json;

json to_json(const BipartiteInstance& b);
json to_json(const SimGraph& g);
/// Error{InvalidInput} on malformed input.
BipartiteInstance instance_from_json(const json& j);
SimGraph graph_from_json(const json& j);
bool is_graph_json(const json& j);

json two_coloring_certificate(const TwoColoring& c);
json multicoloring_certificate(const MultiColoring& mc, double lambda);
json orientation_certificate(const EdgeOrientation& o);
json mis_certificate(const std::vector<int>& members);
json coloring_certificate(const ProperColoring& pc);

TwoColoring two_coloring_from_json(const json& cert);

/// Checks a certificate against the instance or graph it belongs to.
/// Error{InvalidInput} if the type does not fit the input kind.
Verdict verify_certificate(const json& input, const json& cert);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace splitsim
