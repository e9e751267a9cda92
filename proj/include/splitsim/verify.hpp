#pragma once

// Checkers for every certificate type. Pure functions of (instance, certificate);
// they list every violation, not just the first one.

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "splitsim/graph.hpp"
#include "splitsim/weak_splitting.hpp"

namespace splitsim {

struct Verdict {
  bool valid = true;
  std::vector<int> violations;       // offending node (or edge) indices, ascending
  std::vector<std::string> details;  // one line per violation

  nlohmann::json to_json() const;
};

/// Every U-node needs a Red and a Blue neighbor. Throws Error{IncompleteColoring}
/// if the coloring does not cover V or leaves a node uncolored.
Verdict check_weak_splitting(const BipartiteInstance& b, std::span<const Color> coloring);

/// Per U-node and color, at most ceil(lambda * deg(u)) neighbors of that color.
/// Throws Error{IncompleteColoring} on a short coloring or a color outside [0, C).
Verdict check_multicolor_splitting(const BipartiteInstance& b, std::span<const int> mc, int C, double lambda);

/// Every U-node of degree >= degree_threshold sees >= color_threshold colors.
Verdict check_weak_multicolor(const BipartiteInstance& b, std::span<const int> mc, double degree_threshold,
                              double color_threshold);

/// 2 (log n + 1) ln n.
double weak_multicolor_degree_preset_a(double n);
/// (2 log n + 1) ln^c n.
double weak_multicolor_degree_preset_b(double n, double c);

struct DiscrepancyReport {
  std::vector<int> per_node;  // |in - out|
  int max = 0;
};

/// head[e] must be an endpoint of edge e.
DiscrepancyReport check_orientation_discrepancy(const SimGraph& g, std::span<const int> head);

/// Every node has an outgoing edge.
Verdict check_sinkless(const SimGraph& g, std::span<const int> head);

/// Adjacent nodes differ; colors are non-negative.
Verdict check_proper_coloring(const SimGraph& g, std::span<const int> color);

/// Independence and maximality. Violations: members with a member neighbor,
/// and non-members without one.
Verdict check_mis(const SimGraph& g, std::span<const int> members);

/// Red and Blue counts of every U-node with degree >= min_degree lie in
/// [(1/2 - eps) d, (1/2 + eps) d].
Verdict check_uniform_split(const BipartiteInstance& b, std::span<const Color> coloring, double eps,
                            int min_degree = 0);

/// Graph form: each node's neighbors split by side, nodes of degree >= min_degree checked.
Verdict check_uniform_split(const SimGraph& g, std::span<const Color> side, double eps, int min_degree = 0);

}  // namespace splitsim
