#pragma once

#include <vector>

#include "splitsim/graph.hpp"
#include "splitsim/ledger.hpp"

namespace splitsim {

struct DegreeSplit {
  EdgeOrientation orientation;
  RoundLedger ledger;
};

/// Directed degree splitting of a (multi)graph. Odd-degree nodes are joined to
/// one auxiliary node, every component is decomposed into closed trails, edges
/// are oriented along the trails and the auxiliary edges dropped, so that
/// |in(v) - out(v)| <= 1 everywhere. That satisfies the eps*d(v) + 2 contract
/// for every eps; epsilon only sets the nominal round charge.
DegreeSplit directed_degree_split(const SimGraph& g, double epsilon, bool randomized = false);

/// Residual of an iterated degree-rank reduction together with the measured
/// minimum U-degree and rank before each iteration and after the last one.
struct RankReduction {
  BipartiteInstance residual;
  RoundLedger ledger;
  std::vector<int> delta_trace;
  std::vector<int> rank_trace;
};

/// k rounds of: orient B with a degree splitting, then drop every edge that
/// points from V to U. For 0 < eps < 1/3 each iteration j checks
///   δ_j > ((1-eps)/2)^j δ - 2   and   r_j < ((1+eps)/2)^j r + 3
/// and throws Error{ShrinkageViolation} if either fails.
RankReduction degree_rank_reduction_1(const BipartiteInstance& b, double epsilon, int k, bool randomized = false);

/// Multigraph on U: each V-node pairs its neighbors in ascending U order,
/// (1st,2nd), (3rd,4th), ...; `corresponding[e]` is the V-node of edge e.
struct PairingMultigraph {
  SimGraph graph;
  std::vector<int> corresponding;
};

PairingMultigraph build_pairing_multigraph(const BipartiteInstance& b);

/// k rounds of: build the pairing multigraph, orient it, and for each pair edge
/// pointing at ū delete {ū, v_e}. Every V-degree d becomes exactly ceil(d/2),
/// so after ceil(log r) rounds the rank is 1 (checked; Error{ShrinkageViolation}).
RankReduction degree_rank_reduction_2(const BipartiteInstance& b, double epsilon, int k, bool randomized = false);

/// ceil(log2 x) for x >= 1.
int ceil_log2(int x);

}  // namespace splitsim
