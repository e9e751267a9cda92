#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace splitsim {

using Edge = std::pair<int, int>;

/// Undirected graph over dense indices 0..n-1, each node carrying a unique
/// non-negative ID. Parallel edges and self-loops are only accepted when the
/// graph is built as a multigraph.
class SimGraph {
 public:
  SimGraph() = default;

  /// Throws Error{InvalidInput} on out-of-range endpoints, Error{DuplicateEdge}
  /// on parallel edges (simple graphs), and on non-unique IDs. An empty `ids`
  /// means IDs equal indices.
  static SimGraph from_edges(int node_count, std::vector<Edge> edges, bool multigraph = false,
                             std::vector<std::int64_t> ids = {});

  int node_count() const noexcept { return static_cast<int>(ids_.size()); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool is_multigraph() const noexcept { return multigraph_; }

  std::int64_t id(int node) const { return ids_[node]; }
  const std::vector<std::int64_t>& ids() const noexcept { return ids_; }

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t e) const { return edges_[e]; }

  /// Sorted neighbor indices, repeated once per parallel edge. A self-loop
  /// lists the node twice.
  std::span<const int> neighbors(int node) const { return adjacency_[node]; }
  /// Indices of incident edges; a self-loop appears twice.
  std::span<const std::size_t> incident_edges(int node) const { return incident_[node]; }

  int degree(int node) const { return static_cast<int>(adjacency_[node].size()); }
  int max_degree() const noexcept;
  int min_degree() const noexcept;
  bool adjacent(int a, int b) const;

  /// Other endpoint of edge `e` as seen from `node`.
  int other_end(std::size_t e, int node) const {
    return edges_[e].first == node ? edges_[e].second : edges_[e].first;
  }

  /// Induced subgraph on `nodes` (kept in the given order). IDs carry over.
  SimGraph induced(std::span<const int> nodes) const;

 private:
  std::vector<std::int64_t> ids_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<std::vector<std::size_t>> incident_;
  bool multigraph_ = false;
};

/// Weak-splitting instance B = (U ∪ V, E). U is the constraint ("left") side,
/// V the variable ("right") side. Edges are (u, v) with u ∈ [0, left) and
/// v ∈ [0, right), stored sorted.
class BipartiteInstance {
 public:
  BipartiteInstance() = default;

  int left_count() const noexcept { return static_cast<int>(left_adj_.size()); }
  int right_count() const noexcept { return static_cast<int>(right_adj_.size()); }
  /// |U| + |V|; this is the n used by every logarithmic threshold.
  std::size_t node_count() const noexcept { return left_adj_.size() + right_adj_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::span<const int> left_neighbors(int u) const { return left_adj_[u]; }
  std::span<const int> right_neighbors(int v) const { return right_adj_[v]; }
  int left_degree(int u) const { return static_cast<int>(left_adj_[u].size()); }
  int right_degree(int v) const { return static_cast<int>(right_adj_[v].size()); }

  /// δ: minimum U-degree; 0 when U is empty.
  int min_left_degree() const noexcept { return min_left_; }
  /// Δ: maximum U-degree.
  int max_left_degree() const noexcept { return max_left_; }
  /// r: maximum V-degree.
  int rank() const noexcept { return rank_; }

  /// Bipartite graph as a SimGraph: U-node u becomes index u, V-node v becomes
  /// index left_count() + v.
  SimGraph to_graph() const;

  /// Same node sets, only the listed edges (each must already exist).
  BipartiteInstance with_edges(std::vector<Edge> edges) const;

  friend BipartiteInstance build_bipartite(int, int, std::vector<Edge>);

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> left_adj_;
  std::vector<std::vector<int>> right_adj_;
  int min_left_ = 0;
  int max_left_ = 0;
  int rank_ = 0;
};

/// Validated construction. Throws Error{IndexOutOfRange} or Error{DuplicateEdge}.
BipartiteInstance build_bipartite(int left_count, int right_count, std::vector<Edge> edges);

/// For each node v of g: a U-copy v_L (index v) and a V-copy v_R (index v);
/// every edge {a,b} yields (a_L, b_R) and (b_L, a_R).
BipartiteInstance graph_to_weaksplit_instance(const SimGraph& g);

/// Maps the U-side of a split instance back to the original U-side.
struct VirtualNodeMap {
  std::vector<int> original_of;               // virtual U -> original U
  std::vector<std::vector<int>> virtuals_of;  // original U -> its virtual U nodes
};

struct SplitInstance {
  BipartiteInstance instance;
  VirtualNodeMap map;
};

/// Splits every U-node of degree d into floor(d/delta) virtual nodes by
/// chunking its ascending neighbor list; chunk sizes differ by at most one,
/// larger chunks first. All result U-degrees lie in [delta, 2*delta).
/// Throws Error{DegreeBelowDelta} if some U-degree is below delta.
SplitInstance split_heavy_left_nodes(const BipartiteInstance& b, int delta);

/// Exact girth if it is at most `cap`, otherwise cap + 1 (forests always give
/// cap + 1). Requires cap >= 3.
int girth(const SimGraph& g, int cap);

/// A connected piece of an induced sub-instance. `left_ids`/`right_ids` map the
/// piece's local indices to the parent's indices.
struct Component {
  BipartiteInstance instance;
  std::vector<int> left_ids;
  std::vector<int> right_ids;
  std::size_t global_n = 0;
};

/// Maximal connected pieces of the sub-instance induced by the given U and V
/// subsets, ordered by their smallest member (U before V).
std::vector<Component> connected_components(const BipartiteInstance& b,
                                            std::span<const int> left_subset,
                                            std::span<const int> right_subset);

/// Edge orientation aligned with `SimGraph::edges()`: head[e] is the endpoint
/// edge e points to.
struct EdgeOrientation {
  std::vector<int> head;

  int tail(const SimGraph& g, std::size_t e) const { return g.other_end(e, head[e]); }
};

}  // namespace splitsim
