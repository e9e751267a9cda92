#include "splitsim/degree_splitting.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>

#include "splitsim/error.hpp"

namespace splitsim {

int ceil_log2(int x) {
  int k = 0;
  while ((1LL << k) < x) ++k;
  return k;
}

DegreeSplit directed_degree_split(const SimGraph& g, double epsilon, bool randomized) {
  if (!(epsilon > 0)) throw Error(Errc::InvalidInput, "epsilon must be positive");
  const int n = g.node_count();
  const int aux = n;
  const std::size_t m = g.edge_count();

  // Augmented incidence: original edges 0..m-1, auxiliary edges m.. (to aux).
  std::vector<Edge> ends(g.edges().begin(), g.edges().end());
  std::vector<std::vector<std::size_t>> inc(n + 1);
  for (int v = 0; v < n; ++v) {
    auto ie = g.incident_edges(v);
    inc[v].assign(ie.begin(), ie.end());
    if (g.degree(v) % 2 == 1) {
      inc[v].push_back(ends.size());
      inc[aux].push_back(ends.size());
      ends.emplace_back(v, aux);
    }
  }

  std::vector<char> used(ends.size(), 0);
  std::vector<int> head(ends.size(), -1);
  std::vector<std::size_t> cursor(n + 1, 0);
  auto next_edge = [&](int x) -> std::ptrdiff_t {
    auto& c = cursor[x];
    while (c < inc[x].size() && used[inc[x][c]]) ++c;
    return c < inc[x].size() ? static_cast<std::ptrdiff_t>(inc[x][c]) : -1;
  };
  // All augmented degrees are even, so every walk closes at its start.
  for (int s = 0; s <= n; ++s) {
    for (std::ptrdiff_t e = next_edge(s); e >= 0; e = next_edge(s)) {
      int cur = s;
      while (e >= 0) {
        used[e] = 1;
        const auto [a, b] = ends[e];
        const int nxt = (a == cur) ? b : a;
        head[e] = nxt;
        cur = nxt;
        e = next_edge(cur);
      }
    }
  }

  DegreeSplit out;
  out.orientation.head.assign(head.begin(), head.begin() + static_cast<std::ptrdiff_t>(m));
  std::vector<int> balance(n, 0);
  for (std::size_t e = 0; e < m; ++e) {
    const int h = out.orientation.head[e];
    const int t = g.other_end(e, h);
    ++balance[h];
    --balance[t];
  }
  for (int v = 0; v < n; ++v)
    if (std::abs(balance[v]) > 1)
      throw Error(Errc::SelfCheckFailed, "degree split discrepancy above 1 at node " + std::to_string(v));

  out.ledger.add("degree-split", 0, degree_split_charge(epsilon, std::max(n, 2), randomized),
                 randomized ? "eps^-1 (log eps^-1)^1.1 log log n" : "eps^-1 (log eps^-1)^1.1 log n");
  return out;
}

namespace {

void check_shrinkage(const BipartiteInstance& cur, double epsilon, int j, int delta0, int rank0) {
  const double lo = std::pow((1 - epsilon) / 2, j) * delta0 - 2;
  const double hi = std::pow((1 + epsilon) / 2, j) * rank0 + 3;
  if (!(cur.min_left_degree() > lo))
    throw Error(Errc::ShrinkageViolation, "min U-degree " + std::to_string(cur.min_left_degree()) +
                                              " not above " + std::to_string(lo) + " after " + std::to_string(j) +
                                              " iterations");
  if (!(cur.rank() < hi))
    throw Error(Errc::ShrinkageViolation, "rank " + std::to_string(cur.rank()) + " not below " +
                                              std::to_string(hi) + " after " + std::to_string(j) + " iterations");
}

}  // namespace

RankReduction degree_rank_reduction_1(const BipartiteInstance& b, double epsilon, int k, bool randomized) {
  if (k < 0) throw Error(Errc::InvalidInput, "iteration count must be non-negative");
  if (!(epsilon > 0)) throw Error(Errc::InvalidInput, "epsilon must be positive");
  const bool check = epsilon < 1.0 / 3.0;
  RankReduction out;
  out.residual = b;
  out.delta_trace.push_back(b.min_left_degree());
  out.rank_trace.push_back(b.rank());
  const int left = b.left_count();
  for (int j = 1; j <= k; ++j) {
    const BipartiteInstance& cur = out.residual;
    const SimGraph g = cur.to_graph();
    auto split = directed_degree_split(g, epsilon, randomized);
    std::vector<Edge> kept;
    kept.reserve(cur.edge_count() / 2 + 1);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const auto [a, c] = g.edge(e);  // a < left <= c
      if (split.orientation.head[e] == c) kept.emplace_back(a, c - left);
    }
    out.residual = cur.with_edges(std::move(kept));
    out.ledger.append(split.ledger, "drr1-iter" + std::to_string(j));
    out.delta_trace.push_back(out.residual.min_left_degree());
    out.rank_trace.push_back(out.residual.rank());
    if (check) check_shrinkage(out.residual, epsilon, j, b.min_left_degree(), b.rank());
  }
  return out;
}

PairingMultigraph build_pairing_multigraph(const BipartiteInstance& b) {
  std::vector<Edge> es;
  std::vector<int> corr;
  for (int v = 0; v < b.right_count(); ++v) {
    auto nbrs = b.right_neighbors(v);  // ascending U ids
    for (std::size_t i = 0; i + 1 < nbrs.size(); i += 2) {
      es.emplace_back(nbrs[i], nbrs[i + 1]);
      corr.push_back(v);
    }
  }
  return {SimGraph::from_edges(b.left_count(), std::move(es), /*multigraph=*/true), std::move(corr)};
}

RankReduction degree_rank_reduction_2(const BipartiteInstance& b, double epsilon, int k, bool randomized) {
  if (k < 0) throw Error(Errc::InvalidInput, "iteration count must be non-negative");
  if (!(epsilon > 0)) throw Error(Errc::InvalidInput, "epsilon must be positive");
  RankReduction out;
  out.residual = b;
  out.delta_trace.push_back(b.min_left_degree());
  out.rank_trace.push_back(b.rank());
  for (int j = 1; j <= k; ++j) {
    const BipartiteInstance& cur = out.residual;
    // Pairs are rebuilt from scratch on each residual.
    const auto pm = build_pairing_multigraph(cur);
    auto split = directed_degree_split(pm.graph, epsilon, randomized);
    std::vector<Edge> removed;
    removed.reserve(pm.graph.edge_count());
    for (std::size_t e = 0; e < pm.graph.edge_count(); ++e)
      removed.emplace_back(split.orientation.head[e], pm.corresponding[e]);
    std::sort(removed.begin(), removed.end());
    std::vector<Edge> kept;
    kept.reserve(cur.edge_count() - removed.size());
    std::set_difference(cur.edges().begin(), cur.edges().end(), removed.begin(), removed.end(),
                        std::back_inserter(kept));
    BipartiteInstance next = cur.with_edges(std::move(kept));
    for (int v = 0; v < cur.right_count(); ++v) {
      const int d = cur.right_degree(v);
      if (next.right_degree(v) != (d + 1) / 2)
        throw Error(Errc::SelfCheckFailed, "V-node " + std::to_string(v) + " kept " +
                                               std::to_string(next.right_degree(v)) + " of " + std::to_string(d));
    }
    out.residual = std::move(next);
    out.ledger.append(split.ledger, "drr2-iter" + std::to_string(j));
    out.delta_trace.push_back(out.residual.min_left_degree());
    out.rank_trace.push_back(out.residual.rank());
  }
  if (b.rank() >= 1 && k >= ceil_log2(b.rank()) && out.residual.rank() != 1)
    throw Error(Errc::ShrinkageViolation,
                "rank " + std::to_string(out.residual.rank()) + " after " + std::to_string(k) + " iterations");
  return out;
}

}  // namespace splitsim
