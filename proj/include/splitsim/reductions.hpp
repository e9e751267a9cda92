#pragma once

#include <cstdint>
#include <vector>

#include "splitsim/graph.hpp"
#include "splitsim/ledger.hpp"
#include "splitsim/weak_splitting.hpp"

namespace splitsim {

/// U = nodes of g, V = edges of g (V-node e is g.edge(e)). A node whose
/// neighbors are at least half higher-ID joins its edges to higher IDs,
/// otherwise its edges to lower IDs. Needs min degree >= 5 (Error{MinDegreeTooSmall}).
BipartiteInstance sinkless_instance(const SimGraph& g);

/// Red edge: lower ID -> higher ID; Blue edge: higher -> lower.
/// Error{NotAWeakSplitting} if the coloring does not split `inst`.
EdgeOrientation splitting_to_orientation(const SimGraph& g, const BipartiteInstance& inst,
                                         const TwoColoring& coloring);

struct PaddedGraph {
  SimGraph graph;
  std::vector<char> gadget;  // 1 for clique nodes added by the padding
};

/// Each node of degree below delta gets its own delta-clique, delta - deg(v)
/// of whose nodes are joined to v. Needs delta >= max(1, Δ/2).
PaddedGraph pad_to_uniform(const SimGraph& g, int delta);

struct StrongSplitOptions {
  double c_split = 0.25;           // constrained degree must reach c_split ln n / eps^2
  int min_constrained_degree = 0;  // U-nodes below this are unconstrained
  bool strict = true;              // false: no precondition checks, report violations
};

struct StrongSplitResult {
  TwoColoring coloring;
  RoundLedger ledger;
  int violations = 0;
  double initial_estimator = 0;
};

/// Red and Blue counts of every constrained U-node end within
/// [(1/2 - eps) d, (1/2 + eps) d]. Conditional expectations on the B^2
/// schedule; the estimator sums the exact probability that a node's final Red
/// count leaves its integer band under a uniform completion. Strict mode
/// throws Error{PreconditionDegree} / Error{EstimatorOverflow} and self-checks.
StrongSplitResult strong_split_bipartite(const BipartiteInstance& b, double eps, const StrongSplitOptions& opt = {});

struct ProperColoring {
  std::vector<int> color;
  int palette = 0;
};

/// Index-order greedy, at most Δ + 1 colors.
ProperColoring greedy_base_coloring(const SimGraph& g);

struct ColoringResult {
  ProperColoring coloring;
  RoundLedger ledger;
  int levels = 0;            // recursion depth executed
  int leaf_max_degree = 0;   // Δ* over all leaf subgraphs
  int split_violations = 0;  // constrained nodes outside the band, summed over all splits
  std::vector<int> level_max_degree;  // max degree over the parts after each level
};

/// `levels` rounds of: split every current part by a strong splitting of its
/// nodes (constrained: degree >= half the part's max degree), recurse on both
/// halves. Leaves are colored greedily with disjoint palettes.
/// levels < 0 uses max(0, floor(log Δ - log log n)).
ColoringResult coloring_via_splitting(const SimGraph& g, double eps, int levels);

struct MisResult {
  std::vector<int> members;
  RoundLedger ledger;
  int outer_steps = 0;
  int heavy_iterations = 0;
  std::vector<double> covered_fraction;  // heavy nodes covered / heavy nodes, per heavy iteration
  std::vector<int> heavy_counts;
  int split_violations = 0;
};

/// Index-order greedy maximal independent set; asserts |I| >= n / (Δ + 1).
std::vector<int> greedy_mis(const SimGraph& g);

/// Degree-halving steps of heavy-node elimination (heavy: degree >= Δ/2),
/// each iteration splitting the heavy neighborhood until active degrees drop
/// below 4 log n, then a greedy finish once Δ <= 4 log n.
MisResult mis_via_splitting(const SimGraph& g, double eps);

}  // namespace splitsim
