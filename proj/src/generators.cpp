#include "splitsim/generators.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "splitsim/error.hpp"
#include "splitsim/rng.hpp"

namespace splitsim {

namespace {

// One pass of the sampler. `fill_first` picks the V-nodes with the most spare
// capacity (random tie-break) instead of uniform ones; that order never strands
// capacity, so it is the fallback for tight parameters.
bool sample_bipartite(int left, int right, int min_degree, int max_degree, int rank, std::uint64_t seed,
                      bool fill_first, std::vector<Edge>& es) {
  NodeRng rng(seed, 0xb1, fill_first ? 1 : 0);
  std::vector<int> degs(left);
  for (int u = 0; u < left; ++u)
    degs[u] = min_degree + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_degree - min_degree + 1)));
  if (left > 0) degs[0] = min_degree;
  if (left > 1) degs[1] = max_degree;
  std::vector<int> order(left);
  std::iota(order.begin(), order.end(), 0);
  if (fill_first) std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return degs[a] > degs[b]; });

  std::vector<int> avail(right), pos(right), cap(right, rank);
  std::vector<std::uint64_t> key(right);
  std::iota(avail.begin(), avail.end(), 0);
  std::iota(pos.begin(), pos.end(), 0);
  int live = rank > 0 ? right : 0;
  auto remove = [&](int v) {
    const int p = pos[v], last = avail[live - 1];
    std::swap(avail[p], avail[live - 1]);
    pos[last] = p;
    pos[v] = live - 1;
    --live;
  };
  es.clear();
  std::vector<int> picked;
  for (int u : order) {
    const int d = degs[u];
    if (d > live) return false;
    picked.clear();
    if (fill_first) {
      for (int i = 0; i < live; ++i) key[avail[i]] = rng.next();
      std::partial_sort(avail.begin(), avail.begin() + d, avail.begin() + live, [&](int a, int b) {
        return cap[a] != cap[b] ? cap[a] > cap[b] : key[a] < key[b];
      });
      for (int i = 0; i < live; ++i) pos[avail[i]] = i;
      picked.assign(avail.begin(), avail.begin() + d);
    } else {
      for (int i = 0; i < d; ++i) {
        const int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(live - i)));
        std::swap(avail[i], avail[j]);
        pos[avail[i]] = i;
        pos[avail[j]] = j;
        picked.push_back(avail[i]);
      }
    }
    for (int v : picked) {
      es.emplace_back(u, v);
      if (--cap[v] == 0) remove(v);
    }
  }
  return true;
}

}  // namespace

BipartiteInstance random_bipartite(int left, int right, int min_degree, int max_degree, int rank, std::uint64_t seed) {
  if (left < 0 || right < 0 || min_degree < 0 || max_degree < min_degree || rank < 0)
    throw Error(Errc::InfeasibleParams, "bad random-bipartite parameters");
  if (max_degree > right) throw Error(Errc::InfeasibleParams, "max degree exceeds |V|");
  std::vector<Edge> es;
  if (!sample_bipartite(left, right, min_degree, max_degree, rank, seed, false, es) &&
      !sample_bipartite(left, right, min_degree, max_degree, rank, seed, true, es))
    throw Error(Errc::InfeasibleParams, "V capacity exhausted; lower the U-degrees or raise the rank");
  return build_bipartite(left, right, std::move(es));
}

BipartiteInstance left_regular(int left, int right, int degree, std::uint64_t seed) {
  return random_bipartite(left, right, degree, degree, std::max(left, 1), seed);
}

BipartiteInstance complete_bipartite(int left, int right) {
  std::vector<Edge> es;
  for (int u = 0; u < left; ++u)
    for (int v = 0; v < right; ++v) es.emplace_back(u, v);
  return build_bipartite(left, right, std::move(es));
}

BipartiteInstance bipartite_tree(int depth, int u_deg, int v_deg) {
  if (depth < 1 || u_deg < 1 || v_deg < 1) throw Error(Errc::InfeasibleParams, "bad tree parameters");
  if (depth > 1 && v_deg < 2) throw Error(Errc::InfeasibleParams, "inner V-nodes need degree >= 2");
  std::vector<Edge> es;
  int left = 1, right = 0;
  std::vector<int> u_level{0};
  for (int level = 0; level < depth; ++level) {
    std::vector<int> v_level;
    for (int u : u_level) {
      const int kids = level == 0 ? u_deg : u_deg - 1;
      for (int i = 0; i < kids; ++i) {
        es.emplace_back(u, right);
        v_level.push_back(right++);
      }
    }
    if (level + 1 == depth) break;
    u_level.clear();
    for (int v : v_level)
      for (int i = 0; i < v_deg - 1; ++i) {
        es.emplace_back(left, v);
        u_level.push_back(left++);
      }
  }
  return build_bipartite(left, right, std::move(es));
}

SimGraph min_degree_graph(int n, int min_degree, std::uint64_t seed) {
  if (n < 0 || min_degree < 0 || (n > 0 && min_degree > n - 1))
    throw Error(Errc::InfeasibleParams, "no simple graph on " + std::to_string(n) + " nodes has min degree " +
                                            std::to_string(min_degree));
  NodeRng rng(seed, 0xd6, 0);
  std::vector<std::set<int>> adj(n);
  for (int v = 0; v < n; ++v) {
    while (static_cast<int>(adj[v].size()) < min_degree) {
      const int w = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      if (w == v || adj[v].count(w)) continue;
      adj[v].insert(w);
      adj[w].insert(v);
    }
  }
  std::vector<Edge> es;
  for (int v = 0; v < n; ++v)
    for (int w : adj[v])
      if (v < w) es.emplace_back(v, w);
  return SimGraph::from_edges(n, std::move(es));
}

SimGraph near_regular_graph(int n, int degree, std::uint64_t seed) {
  if (n < 0 || degree < 0 || (n > 0 && degree > n - 1)) throw Error(Errc::InfeasibleParams, "degree too large");
  NodeRng rng(seed, 0xe7, 0);
  std::vector<int> stubs;
  stubs.reserve(static_cast<std::size_t>(n) * degree);
  for (int v = 0; v < n; ++v)
    for (int i = 0; i < degree; ++i) stubs.push_back(v);
  for (std::size_t i = stubs.size(); i > 1; --i) std::swap(stubs[i - 1], stubs[rng.below(i)]);
  std::vector<Edge> es;
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    auto a = stubs[i], b = stubs[i + 1];
    if (a != b) es.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
  return SimGraph::from_edges(n, std::move(es));
}

SimGraph complete_graph(int n) {
  std::vector<Edge> es;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) es.emplace_back(a, b);
  return SimGraph::from_edges(n, std::move(es));
}

SimGraph grid_graph(int rows, int cols) {
  if (rows < 0 || cols < 0) throw Error(Errc::InfeasibleParams, "negative grid size");
  std::vector<Edge> es;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const int v = r * cols + c;
      if (c + 1 < cols) es.emplace_back(v, v + 1);
      if (r + 1 < rows) es.emplace_back(v, v + cols);
    }
  return SimGraph::from_edges(rows * cols, std::move(es));
}

SimGraph cycle_graph(int n) {
  if (n < 3) throw Error(Errc::InfeasibleParams, "cycle needs 3 nodes");
  std::vector<Edge> es;
  for (int v = 0; v < n; ++v) es.emplace_back(v, (v + 1) % n);
  return SimGraph::from_edges(n, std::move(es));
}

SimGraph path_graph(int n) {
  std::vector<Edge> es;
  for (int v = 0; v + 1 < n; ++v) es.emplace_back(v, v + 1);
  return SimGraph::from_edges(std::max(n, 0), std::move(es));
}

SimGraph petersen_graph() {
  std::vector<Edge> es;
  for (int i = 0; i < 5; ++i) {
    es.emplace_back(i, (i + 1) % 5);
    es.emplace_back(i, i + 5);
    es.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return SimGraph::from_edges(10, std::move(es));
}

}  // namespace splitsim
