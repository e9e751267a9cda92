#pragma once

#include <cstdint>

#include "splitsim/graph.hpp"

namespace splitsim {

/// U-degrees uniform in [min_degree, max_degree] (node 0 gets exactly
/// min_degree, node 1 exactly max_degree), V-degrees at most `rank`.
/// Throws Error{InfeasibleParams} when the capacities run out.
BipartiteInstance random_bipartite(int left, int right, int min_degree, int max_degree, int rank, std::uint64_t seed);

/// Every U-node has exactly `degree` distinct random neighbors.
BipartiteInstance left_regular(int left, int right, int degree, std::uint64_t seed);

BipartiteInstance complete_bipartite(int left, int right);

/// Alternating tree with `depth` levels of U-nodes, each followed by a level of
/// V-nodes. Every U-node has degree u_deg, inner V-nodes degree v_deg, and the
/// last V level holds leaves.
BipartiteInstance bipartite_tree(int depth, int u_deg, int v_deg);

/// Random simple graph with every degree >= min_degree.
SimGraph min_degree_graph(int n, int min_degree, std::uint64_t seed);

/// Random pairing of n*degree stubs with loops and repeats dropped; max degree <= degree.
SimGraph near_regular_graph(int n, int degree, std::uint64_t seed);

SimGraph complete_graph(int n);
SimGraph grid_graph(int rows, int cols);
SimGraph cycle_graph(int n);
SimGraph path_graph(int n);
SimGraph petersen_graph();

}  // namespace splitsim
