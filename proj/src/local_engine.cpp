#include "splitsim/local_engine.hpp"

#include <cmath>
#include <deque>

namespace splitsim {

int bounded_distance(const SimGraph& g, int from, int to, int limit) {
  if (from == to) return 0;
  std::unordered_map<int, int> dist{{from, 0}};
  std::deque<int> q{from};
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    const int dx = dist[x];
    if (dx >= limit) break;
    for (int y : g.neighbors(x)) {
      if (dist.count(y)) continue;
      if (y == to) return dx + 1;
      dist.emplace(y, dx + 1);
      q.push_back(y);
    }
  }
  return limit + 1;
}

namespace {

// Reusable bounded BFS with a stamp array, for the all-nodes sweeps below.
class BallWalker {
 public:
  explicit BallWalker(const SimGraph& g) : g_(g), dist_(g.node_count(), -1) {}

  template <class Visit>
  void walk(int src, int radius, Visit&& visit) {
    frontier_.clear();
    frontier_.push_back(src);
    dist_[src] = 0;
    touched_.push_back(src);
    for (std::size_t head = 0; head < frontier_.size(); ++head) {
      int x = frontier_[head];
      if (x != src) visit(x, dist_[x]);
      if (dist_[x] >= radius) continue;
      for (int y : g_.neighbors(x)) {
        if (dist_[y] >= 0) continue;
        dist_[y] = dist_[x] + 1;
        touched_.push_back(y);
        frontier_.push_back(y);
      }
    }
    for (int t : touched_) dist_[t] = -1;
    touched_.clear();
  }

 private:
  const SimGraph& g_;
  std::vector<int> dist_;
  std::vector<int> frontier_;
  std::vector<int> touched_;
};

}  // namespace

std::vector<std::pair<int, int>> ball(const SimGraph& g, int src, int radius) {
  BallWalker w(g);
  std::vector<std::pair<int, int>> out{{src, 0}};
  w.walk(src, radius, [&](int x, int d) { out.emplace_back(x, d); });
  return out;
}

PowerColoring power_graph_coloring(const SimGraph& g, int k) {
  if (k != 2 && k != 4) throw Error(Errc::UnsupportedRadius, "power graph coloring supports k = 2 or 4");
  const int n = g.node_count();
  PowerColoring pc;
  pc.color.assign(n, -1);
  BallWalker walker(g);
  std::vector<int> mark;  // mark[c] == v means color c is taken near v
  for (int v = 0; v < n; ++v) {
    int reach = 0;
    walker.walk(v, k, [&](int x, int) {
      ++reach;
      int c = pc.color[x];
      if (c >= 0) {
        if (static_cast<int>(mark.size()) <= c) mark.resize(c + 1, -1);
        mark[c] = v;
      }
    });
    pc.power_max_degree = std::max(pc.power_max_degree, reach);
    int c = 0;
    while (c < static_cast<int>(mark.size()) && mark[c] == v) ++c;
    pc.color[v] = c;
    pc.palette = std::max(pc.palette, c + 1);
  }
  pc.ledger.add("power-coloring-k" + std::to_string(k), static_cast<std::int64_t>(pc.palette) + k,
                static_cast<double>(pc.power_max_degree) + log_star(static_cast<double>(n)),
                "Delta(g^k) + log* n");
  return pc;
}

void validate_schedule(const SimGraph& g, int k, std::span<const int> schedule_class) {
  if (static_cast<int>(schedule_class.size()) != g.node_count())
    throw Error(Errc::InvalidScheduleColoring, "schedule does not cover the graph");
  BallWalker walker(g);
  for (int v = 0; v < g.node_count(); ++v) {
    const int c = schedule_class[v];
    if (c < 0) continue;
    walker.walk(v, k, [&](int x, int d) {
      if (x > v && schedule_class[x] == c)
        throw Error(Errc::InvalidScheduleColoring, "nodes " + std::to_string(v) + " and " + std::to_string(x) +
                                                       " share class " + std::to_string(c) + " at distance " +
                                                       std::to_string(d));
    });
  }
}

}  // namespace splitsim
