#include "splitsim/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <queue>
#include <string>
#include <unordered_set>

#include "splitsim/error.hpp"

namespace splitsim {

SimGraph SimGraph::from_edges(int node_count, std::vector<Edge> edges, bool multigraph,
                              std::vector<std::int64_t> ids) {
  if (node_count < 0) throw Error(Errc::InvalidInput, "negative node count");
  SimGraph g;
  g.multigraph_ = multigraph;
  if (ids.empty()) {
    ids.resize(node_count);
    std::iota(ids.begin(), ids.end(), std::int64_t{0});
  }
  if (static_cast<int>(ids.size()) != node_count)
    throw Error(Errc::InvalidInput, "id list length differs from node count");
  {
    std::unordered_set<std::int64_t> seen;
    for (auto id : ids) {
      if (id < 0) throw Error(Errc::InvalidInput, "negative node id");
      if (!seen.insert(id).second) throw Error(Errc::InvalidInput, "duplicate node id " + std::to_string(id));
    }
  }
  g.ids_ = std::move(ids);
  g.adjacency_.assign(node_count, {});
  g.incident_.assign(node_count, {});

  for (auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= node_count || b >= node_count)
      throw Error(Errc::IndexOutOfRange, "edge endpoint out of range");
    if (a == b && !multigraph) throw Error(Errc::InvalidInput, "self-loop in simple graph");
    if (a > b) std::swap(a, b);
  }
  if (!multigraph) {
    std::vector<Edge> sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error(Errc::DuplicateEdge, "parallel edge in simple graph");
  }
  g.edges_ = std::move(edges);
  for (std::size_t e = 0; e < g.edges_.size(); ++e) {
    auto [a, b] = g.edges_[e];
    g.adjacency_[a].push_back(b);
    g.adjacency_[b].push_back(a);
    g.incident_[a].push_back(e);
    g.incident_[b].push_back(e);
  }
  for (auto& adj : g.adjacency_) std::sort(adj.begin(), adj.end());
  return g;
}

int SimGraph::max_degree() const noexcept {
  int best = 0;
  for (const auto& adj : adjacency_) best = std::max(best, static_cast<int>(adj.size()));
  return best;
}

int SimGraph::min_degree() const noexcept {
  if (adjacency_.empty()) return 0;
  int best = std::numeric_limits<int>::max();
  for (const auto& adj : adjacency_) best = std::min(best, static_cast<int>(adj.size()));
  return best;
}

bool SimGraph::adjacent(int a, int b) const {
  const auto& adj = adjacency_[a];
  return std::binary_search(adj.begin(), adj.end(), b);
}

SimGraph SimGraph::induced(std::span<const int> nodes) const {
  std::vector<int> local(node_count(), -1);
  std::vector<std::int64_t> ids;
  ids.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    local[nodes[i]] = static_cast<int>(i);
    ids.push_back(ids_[nodes[i]]);
  }
  std::vector<Edge> sub;
  for (const auto& [a, b] : edges_)
    if (local[a] >= 0 && local[b] >= 0) sub.emplace_back(local[a], local[b]);
  return from_edges(static_cast<int>(nodes.size()), std::move(sub), multigraph_, std::move(ids));
}

BipartiteInstance build_bipartite(int left_count, int right_count, std::vector<Edge> edges) {
  if (left_count < 0 || right_count < 0) throw Error(Errc::IndexOutOfRange, "negative side size");
  for (const auto& [u, v] : edges)
    if (u < 0 || v < 0 || u >= left_count || v >= right_count)
      throw Error(Errc::IndexOutOfRange,
                  "edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
  std::sort(edges.begin(), edges.end());
  if (auto it = std::adjacent_find(edges.begin(), edges.end()); it != edges.end())
    throw Error(Errc::DuplicateEdge,
                "edge (" + std::to_string(it->first) + "," + std::to_string(it->second) + ") repeated");

  BipartiteInstance b;
  b.edges_ = std::move(edges);
  b.left_adj_.assign(left_count, {});
  b.right_adj_.assign(right_count, {});
  for (const auto& [u, v] : b.edges_) {
    b.left_adj_[u].push_back(v);
    b.right_adj_[v].push_back(u);
  }
  // Edges are sorted by (u, v), so left lists are already sorted; right lists
  // receive u in ascending order as well.
  if (left_count > 0) {
    b.min_left_ = std::numeric_limits<int>::max();
    for (const auto& adj : b.left_adj_) {
      b.min_left_ = std::min(b.min_left_, static_cast<int>(adj.size()));
      b.max_left_ = std::max(b.max_left_, static_cast<int>(adj.size()));
    }
  }
  for (const auto& adj : b.right_adj_) b.rank_ = std::max(b.rank_, static_cast<int>(adj.size()));
  return b;
}

SimGraph BipartiteInstance::to_graph() const {
  std::vector<Edge> es;
  es.reserve(edges_.size());
  const int left = left_count();
  for (const auto& [u, v] : edges_) es.emplace_back(u, left + v);
  return SimGraph::from_edges(left + right_count(), std::move(es));
}

BipartiteInstance BipartiteInstance::with_edges(std::vector<Edge> edges) const {
  return build_bipartite(left_count(), right_count(), std::move(edges));
}

BipartiteInstance graph_to_weaksplit_instance(const SimGraph& g) {
  if (g.is_multigraph()) throw Error(Errc::InvalidInput, "weak-splitting encoding needs a simple graph");
  std::vector<Edge> es;
  es.reserve(2 * g.edge_count());
  for (const auto& [a, b] : g.edges()) {
    es.emplace_back(a, b);
    es.emplace_back(b, a);
  }
  return build_bipartite(g.node_count(), g.node_count(), std::move(es));
}

SplitInstance split_heavy_left_nodes(const BipartiteInstance& b, int delta) {
  if (delta < 1) throw Error(Errc::InvalidInput, "delta must be at least 1");
  SplitInstance out;
  std::vector<Edge> es;
  es.reserve(b.edge_count());
  int next = 0;
  out.map.virtuals_of.resize(b.left_count());
  for (int u = 0; u < b.left_count(); ++u) {
    auto nbrs = b.left_neighbors(u);
    const int d = static_cast<int>(nbrs.size());
    if (d < delta)
      throw Error(Errc::DegreeBelowDelta,
                  "U-node " + std::to_string(u) + " has degree " + std::to_string(d));
    const int chunks = d / delta;
    const int base = d / chunks;
    const int extra = d % chunks;
    std::size_t pos = 0;
    for (int c = 0; c < chunks; ++c) {
      const int size = base + (c < extra ? 1 : 0);
      for (int i = 0; i < size; ++i) es.emplace_back(next, nbrs[pos++]);
      out.map.original_of.push_back(u);
      out.map.virtuals_of[u].push_back(next);
      ++next;
    }
  }
  out.instance = build_bipartite(next, b.right_count(), std::move(es));
  return out;
}

namespace {

// Nodes of the 2-core: every cycle lives there.
std::vector<char> two_core(const SimGraph& g) {
  const int n = g.node_count();
  std::vector<int> deg(n);
  std::vector<char> alive(n, 1);
  std::vector<int> stack;
  for (int v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    if (deg[v] <= 1) stack.push_back(v);
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (!alive[v]) continue;
    alive[v] = 0;
    for (int w : g.neighbors(v))
      if (alive[w] && --deg[w] <= 1) stack.push_back(w);
  }
  return alive;
}

}  // namespace

int girth(const SimGraph& g, int cap) {
  if (cap < 3) throw Error(Errc::InvalidInput, "girth cap must be at least 3");
  const int n = g.node_count();
  int best = cap + 1;
  // Self-loops and parallel edges (multigraphs only).
  for (const auto& [a, b] : g.edges()) {
    if (a == b) return 1;
  }
  if (g.is_multigraph()) {
    auto es = g.edges();
    std::sort(es.begin(), es.end());
    if (std::adjacent_find(es.begin(), es.end()) != es.end()) return 2;
  }
  const auto core = two_core(g);
  std::vector<int> dist(n, -1);
  std::vector<std::size_t> parent_edge(n);
  std::vector<int> touched;
  const int depth_limit = cap / 2 + 1;
  for (int root = 0; root < n; ++root) {
    if (!core[root]) continue;
    std::queue<int> q;
    dist[root] = 0;
    touched.push_back(root);
    q.push(root);
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      if (2 * dist[x] + 1 >= best) break;
      if (dist[x] >= depth_limit) continue;
      for (std::size_t e : g.incident_edges(x)) {
        if (x != root && e == parent_edge[x]) continue;
        int y = g.other_end(e, x);
        if (!core[y]) continue;
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          parent_edge[y] = e;
          touched.push_back(y);
          q.push(y);
        } else {
          best = std::min(best, dist[x] + dist[y] + 1);
        }
      }
    }
    for (int t : touched) dist[t] = -1;
    touched.clear();
  }
  return best <= cap ? best : cap + 1;
}

std::vector<Component> connected_components(const BipartiteInstance& b,
                                            std::span<const int> left_subset,
                                            std::span<const int> right_subset) {
  const int left = b.left_count();
  const int right = b.right_count();
  std::vector<char> in_left(left, 0), in_right(right, 0);
  for (int u : left_subset) {
    if (u < 0 || u >= left) throw Error(Errc::IndexOutOfRange, "U subset member out of range");
    in_left[u] = 1;
  }
  for (int v : right_subset) {
    if (v < 0 || v >= right) throw Error(Errc::IndexOutOfRange, "V subset member out of range");
    in_right[v] = 1;
  }
  // Nodes 0..left-1 are U, left.. are V.
  std::vector<int> comp(left + right, -1);
  std::vector<Component> out;
  auto grow = [&](int start) {
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    Component& c = out.back();
    c.global_n = b.node_count();
    std::deque<int> q{start};
    comp[start] = id;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      if (x < left) {
        c.left_ids.push_back(x);
        for (int v : b.left_neighbors(x))
          if (in_right[v] && comp[left + v] < 0) {
            comp[left + v] = id;
            q.push_back(left + v);
          }
      } else {
        c.right_ids.push_back(x - left);
        for (int u : b.right_neighbors(x - left))
          if (in_left[u] && comp[u] < 0) {
            comp[u] = id;
            q.push_back(u);
          }
      }
    }
  };
  for (int u = 0; u < left; ++u)
    if (in_left[u] && comp[u] < 0) grow(u);
  for (int v = 0; v < right; ++v)
    if (in_right[v] && comp[left + v] < 0) grow(left + v);

  for (auto& c : out) {
    std::sort(c.left_ids.begin(), c.left_ids.end());
    std::sort(c.right_ids.begin(), c.right_ids.end());
    std::vector<Edge> es;
    for (std::size_t i = 0; i < c.left_ids.size(); ++i) {
      for (int v : b.left_neighbors(c.left_ids[i])) {
        if (!in_right[v]) continue;
        auto it = std::lower_bound(c.right_ids.begin(), c.right_ids.end(), v);
        es.emplace_back(static_cast<int>(i), static_cast<int>(it - c.right_ids.begin()));
      }
    }
    c.instance = build_bipartite(static_cast<int>(c.left_ids.size()),
                                 static_cast<int>(c.right_ids.size()), std::move(es));
  }
  return out;
}

}  // namespace splitsim
