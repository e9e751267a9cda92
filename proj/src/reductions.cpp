#include "splitsim/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "splitsim/error.hpp"
#include "splitsim/local_engine.hpp"

namespace splitsim {

BipartiteInstance sinkless_instance(const SimGraph& g) {
  if (g.node_count() > 0 && g.min_degree() < 5)
    throw Error(Errc::MinDegreeTooSmall, "min degree " + std::to_string(g.min_degree()) + " < 5");
  if (g.is_multigraph()) throw Error(Errc::InvalidInput, "simple graph expected");
  std::vector<Edge> es;
  for (int u = 0; u < g.node_count(); ++u) {
    int higher = 0;
    for (int w : g.neighbors(u)) higher += g.id(w) > g.id(u);
    const bool up = 2 * higher >= g.degree(u);
    for (std::size_t e : g.incident_edges(u)) {
      const int w = g.other_end(e, u);
      if ((g.id(w) > g.id(u)) == up) es.emplace_back(u, static_cast<int>(e));
    }
  }
  return build_bipartite(g.node_count(), static_cast<int>(g.edge_count()), std::move(es));
}

EdgeOrientation splitting_to_orientation(const SimGraph& g, const BipartiteInstance& inst,
                                         const TwoColoring& coloring) {
  if (inst.left_count() != g.node_count() || inst.right_count() != static_cast<int>(g.edge_count()))
    throw Error(Errc::InvalidInput, "instance does not match the graph");
  if (coloring.size() != g.edge_count()) throw Error(Errc::NotAWeakSplitting, "coloring does not cover the edges");
  for (int u = 0; u < inst.left_count(); ++u) {
    bool red = false, blue = false;
    for (int e : inst.left_neighbors(u)) {
      red |= coloring[e] == Color::Red;
      blue |= coloring[e] == Color::Blue;
    }
    if (!(red && blue)) throw Error(Errc::NotAWeakSplitting, "node " + std::to_string(u) + " is not split");
  }
  EdgeOrientation o;
  o.head.resize(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.edge(e);
    const int lo = g.id(a) < g.id(b) ? a : b;
    const int hi = lo == a ? b : a;
    o.head[e] = coloring[e] == Color::Blue ? lo : hi;
  }
  return o;
}

PaddedGraph pad_to_uniform(const SimGraph& g, int delta) {
  if (delta < std::max(1, (g.max_degree() + 1) / 2))
    throw Error(Errc::InvalidInput, "delta must be at least max(1, Δ/2)");
  std::vector<Edge> es = g.edges();
  std::vector<std::int64_t> ids = g.ids();
  std::int64_t next_id = ids.empty() ? 0 : *std::max_element(ids.begin(), ids.end()) + 1;
  int n = g.node_count();
  std::vector<char> gadget(n, 0);
  for (int v = 0; v < g.node_count(); ++v) {
    const int missing = delta - g.degree(v);
    if (missing <= 0) continue;
    const int base = n;
    for (int i = 0; i < delta; ++i) {
      ids.push_back(next_id++);
      gadget.push_back(1);
      for (int j = 0; j < i; ++j) es.emplace_back(base + j, base + i);
    }
    for (int i = 0; i < missing; ++i) es.emplace_back(v, base + i);
    n += delta;
  }
  return {SimGraph::from_edges(n, std::move(es), false, std::move(ids)), std::move(gadget)};
}

namespace {

// CDFs of Bin(m, 1/2), built on demand.
class HalfBinomial {
 public:
  // P(Bin(m, 1/2) <= x).
  double cdf(int m, int x) {
    if (x < 0) return 0;
    if (x >= m) return 1;
    if (static_cast<int>(rows_.size()) <= m) rows_.resize(m + 1);
    auto& row = rows_[m];
    if (row.empty()) {
      row.resize(m + 1);
      double acc = 0;
      const double lm = std::lgamma(m + 1.0) - m * std::log(2.0);
      for (int k = 0; k <= m; ++k) {
        acc += std::exp(lm - std::lgamma(k + 1.0) - std::lgamma(m - k + 1.0));
        row[k] = acc;
      }
    }
    return row[x];
  }

 private:
  std::vector<std::vector<double>> rows_;
};

}  // namespace

StrongSplitResult strong_split_bipartite(const BipartiteInstance& b, double eps, const StrongSplitOptions& opt) {
  if (!(eps > 0)) throw Error(Errc::InvalidInput, "eps must be positive");
  const int left = b.left_count();
  const double n = static_cast<double>(std::max<std::size_t>(b.node_count(), 2));
  std::vector<char> constrained(left, 0);
  std::vector<int> lo(left), hi(left), red(left, 0), open(left);
  for (int u = 0; u < left; ++u) {
    const int d = b.left_degree(u);
    open[u] = d;
    if (d == 0 || d < opt.min_constrained_degree) continue;
    constrained[u] = 1;
    lo[u] = static_cast<int>(std::ceil((0.5 - eps) * d - 1e-9));
    hi[u] = static_cast<int>(std::floor((0.5 + eps) * d + 1e-9));
    if (opt.strict) {
      if (d < opt.c_split * std::log(n) / (eps * eps))
        throw Error(Errc::PreconditionDegree, "U-node " + std::to_string(u) + " has degree " + std::to_string(d) +
                                                  " < c ln n / eps^2");
      if (lo[u] > hi[u]) throw Error(Errc::PreconditionDegree, "empty band at U-node " + std::to_string(u));
    }
  }

  HalfBinomial bin;
  // P(final Red count of u leaves [blo, bhi]) with r Red so far and m open.
  std::vector<int> blo = lo, bhi = hi;
  auto risk = [&](int u, int r, int m) {
    const int a = blo[u] - r, z = bhi[u] - r;
    return bin.cdf(m, a - 1) + bin.cdf(m, m - z - 1);
  };
  auto estimate = [&] {
    double total = 0;
    for (int u = 0; u < left; ++u)
      if (constrained[u]) total += risk(u, 0, open[u]);
    return total;
  };

  StrongSplitResult res;
  res.initial_estimator = estimate();
  if (opt.strict && !(res.initial_estimator < 1))
    throw Error(Errc::EstimatorOverflow, "initial estimator " + std::to_string(res.initial_estimator));
  // Target the half-width band when its estimator also starts below 1.
  for (int u = 0; u < left; ++u) {
    if (!constrained[u]) continue;
    const int d = b.left_degree(u);
    blo[u] = static_cast<int>(std::ceil((0.5 - eps / 2) * d - 1e-9));
    bhi[u] = static_cast<int>(std::floor((0.5 + eps / 2) * d + 1e-9));
  }
  if (!(estimate() < 1)) {
    blo = lo;
    bhi = hi;
  }

  auto program = [&](SLocalView<Color>& view) -> Color {
    const int x = view.center();
    double d_red = 0, d_blue = 0;
    for (int u : view.neighbors(x)) {
      view.require(u, 1);
      if (!constrained[u]) continue;
      const double now = risk(u, red[u], open[u]);
      d_red += risk(u, red[u] + 1, open[u] - 1) - now;
      d_blue += risk(u, red[u], open[u] - 1) - now;
    }
    const Color c = d_red <= d_blue ? Color::Red : Color::Blue;
    for (int u : view.neighbors(x)) {
      --open[u];
      red[u] += c == Color::Red;
    }
    return c;
  };

  const SimGraph g = b.to_graph();
  auto pc = power_graph_coloring(g, 2);
  std::vector<int> cls(b.node_count(), -1);
  for (int v = 0; v < b.right_count(); ++v) cls[left + v] = pc.color[left + v];
  auto run = slocal_to_local<Color>(program, g, 2, cls, "strong-split");
  res.ledger.append(pc.ledger);
  res.ledger.append(run.ledger);
  res.coloring.resize(b.right_count());
  for (int v = 0; v < b.right_count(); ++v) res.coloring[v] = run.outputs[left + v].value_or(Color::Red);

  for (int u = 0; u < left; ++u) {
    if (!constrained[u]) continue;
    int r = 0;
    for (int v : b.left_neighbors(u)) r += res.coloring[v] == Color::Red;
    const int d = b.left_degree(u);
    if (r < lo[u] || r > hi[u] || d - r < lo[u] || d - r > hi[u]) ++res.violations;
  }
  if (opt.strict && res.violations > 0)
    throw Error(Errc::SelfCheckFailed, std::to_string(res.violations) + " U-nodes outside the band");
  return res;
}

ProperColoring greedy_base_coloring(const SimGraph& g) {
  ProperColoring pc;
  pc.color.assign(g.node_count(), -1);
  std::vector<int> mark(g.max_degree() + 2, -1);
  for (int v = 0; v < g.node_count(); ++v) {
    for (int w : g.neighbors(v))
      if (pc.color[w] >= 0) mark[pc.color[w]] = v;
    int c = 0;
    while (mark[c] == v) ++c;
    pc.color[v] = c;
    pc.palette = std::max(pc.palette, c + 1);
  }
  return pc;
}

namespace {

// Bipartite instance whose U-side is the nodes of h with degree >= min_deg
// (in ascending order) and whose V-side is all nodes of h.
BipartiteInstance neighborhood_instance(const SimGraph& h, int min_deg) {
  std::vector<Edge> es;
  int next = 0;
  for (int x = 0; x < h.node_count(); ++x) {
    if (h.degree(x) == 0 || h.degree(x) < min_deg) continue;
    for (int w : h.neighbors(x)) es.emplace_back(next, w);
    ++next;
  }
  return build_bipartite(next, h.node_count(), std::move(es));
}

}  // namespace

ColoringResult coloring_via_splitting(const SimGraph& g, double eps, int levels) {
  if (!(eps > 0)) throw Error(Errc::InvalidInput, "eps must be positive");
  const int n = g.node_count();
  if (levels < 0) {
    if (n < 4) throw Error(Errc::PreconditionSize, "n < 4");
    const double delta = std::max(1, g.max_degree());
    levels = std::max(0, static_cast<int>(std::floor(std::log2(delta) - std::log2(std::log2(n)))));
  }
  ColoringResult res;
  res.levels = levels;
  StrongSplitOptions opt;
  opt.strict = false;

  std::vector<std::vector<int>> parts{std::vector<int>(n)};
  std::iota(parts[0].begin(), parts[0].end(), 0);
  for (int level = 0; level < levels; ++level) {
    std::vector<std::vector<int>> next;
    RoundLedger slowest;
    int level_max = 0;
    for (const auto& part : parts) {
      const SimGraph h = g.induced(part);
      opt.min_constrained_degree = (h.max_degree() + 1) / 2;
      auto split = strong_split_bipartite(neighborhood_instance(h, opt.min_constrained_degree), eps, opt);
      res.split_violations += split.violations;
      if (split.ledger.total_simulated() >= slowest.total_simulated()) slowest = split.ledger;
      std::vector<int> red, blue;
      for (int x = 0; x < h.node_count(); ++x)
        (split.coloring[x] == Color::Red ? red : blue).push_back(part[x]);
      level_max = std::max({level_max, g.induced(red).max_degree(), g.induced(blue).max_degree()});
      next.push_back(std::move(red));
      next.push_back(std::move(blue));
    }
    res.ledger.append(slowest, "level" + std::to_string(level) + "/");
    res.level_max_degree.push_back(level_max);
    parts = std::move(next);
  }

  std::vector<SimGraph> leaves;
  for (const auto& part : parts) {
    leaves.push_back(g.induced(part));
    res.leaf_max_degree = std::max(res.leaf_max_degree, leaves.back().max_degree());
  }
  res.coloring.color.assign(n, -1);
  const int stride = res.leaf_max_degree + 1;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    auto base = greedy_base_coloring(leaves[i]);
    for (std::size_t x = 0; x < parts[i].size(); ++x) {
      const int c = static_cast<int>(i) * stride + base.color[x];
      res.coloring.color[parts[i][x]] = c;
      res.coloring.palette = std::max(res.coloring.palette, c + 1);
    }
  }
  const double ln = std::log2(std::max(n, 2));
  res.ledger.add("base-coloring", 0, ln * ln, "log^2 n");

  const std::int64_t bound = (std::int64_t{1} << levels) * stride;
  if (res.coloring.palette > bound)
    throw Error(Errc::SelfCheckFailed, "palette " + std::to_string(res.coloring.palette) + " exceeds " +
                                           std::to_string(bound));
  for (const auto& [a, b] : g.edges())
    if (res.coloring.color[a] == res.coloring.color[b])
      throw Error(Errc::SelfCheckFailed, "adjacent nodes share a color");
  return res;
}

std::vector<int> greedy_mis(const SimGraph& g) {
  std::vector<char> blocked(g.node_count(), 0);
  std::vector<int> members;
  for (int v = 0; v < g.node_count(); ++v) {
    if (blocked[v]) continue;
    members.push_back(v);
    for (int w : g.neighbors(v)) blocked[w] = 1;
  }
  if (static_cast<double>(members.size()) * (g.max_degree() + 1) < g.node_count())
    throw Error(Errc::SelfCheckFailed, "independent set smaller than n / (Δ + 1)");
  return members;
}

namespace {

std::vector<int> members_of(const std::vector<char>& flag) {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(flag.size()); ++v)
    if (flag[v]) out.push_back(v);
  return out;
}

// Degree of every node of g restricted to nodes with the flag set.
std::vector<int> degrees_within(const SimGraph& g, const std::vector<char>& flag) {
  std::vector<int> deg(g.node_count(), 0);
  for (int v = 0; v < g.node_count(); ++v)
    if (flag[v])
      for (int w : g.neighbors(v)) deg[v] += flag[w];
  return deg;
}

}  // namespace

MisResult mis_via_splitting(const SimGraph& g, double eps) {
  if (!(eps > 0)) throw Error(Errc::InvalidInput, "eps must be positive");
  const int n = g.node_count();
  MisResult res;
  const double logn = std::log2(std::max(n, 2));
  const double target = 4 * logn;
  const double budget = std::pow(logn, 4);
  std::vector<char> alive(n, 1), in_mis(n, 0);
  StrongSplitOptions opt;
  opt.strict = false;
  opt.min_constrained_degree = static_cast<int>(std::ceil(target));

  auto take = [&](const std::vector<int>& set) {
    for (int v : set) {
      in_mis[v] = 1;
      alive[v] = 0;
    }
    for (int v : set)
      for (int w : g.neighbors(v)) alive[w] = 0;
  };

  while (true) {
    auto deg = degrees_within(g, alive);
    int delta = 0;
    for (int v = 0; v < n; ++v)
      if (alive[v]) delta = std::max(delta, deg[v]);
    if (delta <= target) break;
    ++res.outer_steps;
    while (true) {
      deg = degrees_within(g, alive);
      std::vector<char> heavy(n, 0), in_g1(n, 0);
      int heavy_count = 0;
      for (int v = 0; v < n; ++v)
        if (alive[v] && 2 * deg[v] >= delta) {
          heavy[v] = 1;
          ++heavy_count;
        }
      if (heavy_count == 0) break;
      if (++res.heavy_iterations > budget)
        throw Error(Errc::IterationBudgetExceeded, "heavy elimination exceeded log^4 n iterations");
      res.heavy_counts.push_back(heavy_count);
      for (int v = 0; v < n; ++v)
        if (heavy[v]) {
          in_g1[v] = 1;
          for (int w : g.neighbors(v)) in_g1[w] |= alive[w];
        }
      const std::vector<int> g1_nodes = members_of(in_g1);
      const SimGraph g1 = g.induced(g1_nodes);
      const int m = g1.node_count();
      std::vector<char> active(m, 1);
      const int cap = static_cast<int>(std::ceil(2 * std::log2(std::max(delta, 2))));
      for (int round = 0; round < cap; ++round) {
        auto adeg = degrees_within(g1, active);
        if (*std::max_element(adeg.begin(), adeg.end()) < target) break;
        const std::vector<int> act = members_of(active);
        const SimGraph h = g1.induced(act);
        auto split = strong_split_bipartite(neighborhood_instance(h, opt.min_constrained_degree), eps, opt);
        res.split_violations += split.violations;
        res.ledger.append(split.ledger, "heavy" + std::to_string(res.heavy_iterations) + "/");
        for (std::size_t x = 0; x < act.size(); ++x)
          if (split.coloring[x] == Color::Blue) active[act[x]] = 0;
        adeg = degrees_within(g1, active);
        for (int x = 0; x < m; ++x)
          if (active[x] && adeg[x] < logn) active[x] = 0;
      }
      const std::vector<int> act = members_of(active);
      std::vector<int> chosen;
      for (int x : greedy_mis(g1.induced(act))) chosen.push_back(g1_nodes[act[x]]);
      if (chosen.empty())
        for (int v = 0; v < n && chosen.empty(); ++v)
          if (heavy[v]) chosen.push_back(v);
      std::vector<char> covered(n, 0);
      for (int v : chosen) {
        covered[v] = 1;
        for (int w : g.neighbors(v)) covered[w] = 1;
      }
      int hit = 0;
      for (int v = 0; v < n; ++v) hit += heavy[v] && covered[v];
      res.covered_fraction.push_back(static_cast<double>(hit) / heavy_count);
      res.ledger.add("heavy" + std::to_string(res.heavy_iterations) + "/mis-greedy", 0, logn * logn, "log^2 n");
      take(chosen);
    }
  }

  const std::vector<int> rest = members_of(alive);
  std::vector<int> finish;
  for (int x : greedy_mis(g.induced(rest))) finish.push_back(rest[x]);
  take(finish);
  res.ledger.add("final-mis-greedy", 0, logn * logn, "log^2 n");
  res.members = members_of(in_mis);

  for (const auto& [a, b] : g.edges())
    if (in_mis[a] && in_mis[b]) throw Error(Errc::SelfCheckFailed, "adjacent members");
  for (int v = 0; v < n; ++v) {
    bool dominated = in_mis[v];
    for (int w : g.neighbors(v)) dominated = dominated || in_mis[w];
    if (!dominated) throw Error(Errc::SelfCheckFailed, "set is not maximal");
  }
  return res;
}

}  // namespace splitsim
