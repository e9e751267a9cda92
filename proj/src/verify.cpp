#include "splitsim/verify.hpp"

#include <cmath>
#include <set>

#include "splitsim/error.hpp"

namespace splitsim {

namespace {

void flag(Verdict& v, int node, std::string why) {
  v.valid = false;
  v.violations.push_back(node);
  v.details.push_back(std::to_string(node) + ": " + std::move(why));
}

double lg(double x) { return std::log2(x); }

}  // namespace

nlohmann::json Verdict::to_json() const {
  return {{"valid", valid}, {"violation_count", violations.size()}, {"violations", violations}, {"details", details}};
}

Verdict check_weak_splitting(const BipartiteInstance& b, std::span<const Color> coloring) {
  if (coloring.size() != static_cast<std::size_t>(b.right_count()))
    throw Error(Errc::IncompleteColoring, "coloring covers " + std::to_string(coloring.size()) + " of " +
                                             std::to_string(b.right_count()) + " V-nodes");
  for (std::size_t v = 0; v < coloring.size(); ++v)
    if (coloring[v] != Color::Red && coloring[v] != Color::Blue)
      throw Error(Errc::IncompleteColoring, "V-node " + std::to_string(v) + " is uncolored");
  Verdict out;
  for (int u = 0; u < b.left_count(); ++u) {
    int red = 0, blue = 0;
    for (int v : b.left_neighbors(u)) (coloring[v] == Color::Red ? red : blue)++;
    if (red == 0 || blue == 0) flag(out, u, red == 0 && blue == 0 ? "no neighbors" : red == 0 ? "all blue" : "all red");
  }
  return out;
}

Verdict check_multicolor_splitting(const BipartiteInstance& b, std::span<const int> mc, int C, double lambda) {
  if (mc.size() != static_cast<std::size_t>(b.right_count()))
    throw Error(Errc::IncompleteColoring, "multicoloring does not cover V");
  for (std::size_t v = 0; v < mc.size(); ++v)
    if (mc[v] < 0 || mc[v] >= C)
      throw Error(Errc::IncompleteColoring, "V-node " + std::to_string(v) + " has color " + std::to_string(mc[v]));
  Verdict out;
  std::vector<int> count(C, 0);
  for (int u = 0; u < b.left_count(); ++u) {
    const int cap = static_cast<int>(std::ceil(lambda * b.left_degree(u) - 1e-12));
    for (int v : b.left_neighbors(u)) ++count[mc[v]];
    int worst = -1;
    for (int v : b.left_neighbors(u))
      if (count[mc[v]] > cap && (worst < 0 || count[mc[v]] > count[worst])) worst = mc[v];
    if (worst >= 0)
      flag(out, u, "color " + std::to_string(worst) + " used " + std::to_string(count[worst]) + " > " +
                       std::to_string(cap));
    for (int v : b.left_neighbors(u)) count[mc[v]] = 0;
  }
  return out;
}

Verdict check_weak_multicolor(const BipartiteInstance& b, std::span<const int> mc, double degree_threshold,
                              double color_threshold) {
  if (mc.size() != static_cast<std::size_t>(b.right_count()))
    throw Error(Errc::IncompleteColoring, "multicoloring does not cover V");
  Verdict out;
  for (int u = 0; u < b.left_count(); ++u) {
    if (b.left_degree(u) < degree_threshold) continue;
    std::set<int> seen;
    for (int v : b.left_neighbors(u)) seen.insert(mc[v]);
    if (static_cast<double>(seen.size()) < color_threshold)
      flag(out, u, "sees " + std::to_string(seen.size()) + " colors");
  }
  return out;
}

double weak_multicolor_degree_preset_a(double n) { return 2 * (lg(n) + 1) * std::log(n); }
double weak_multicolor_degree_preset_b(double n, double c) { return (2 * lg(n) + 1) * std::pow(std::log(n), c); }

DiscrepancyReport check_orientation_discrepancy(const SimGraph& g, std::span<const int> head) {
  if (head.size() != g.edge_count()) throw Error(Errc::InvalidInput, "orientation does not cover every edge");
  std::vector<int> in(g.node_count(), 0), out(g.node_count(), 0);
  for (std::size_t e = 0; e < head.size(); ++e) {
    const auto [a, b] = g.edge(e);
    if (head[e] != a && head[e] != b) throw Error(Errc::InvalidInput, "head is not an endpoint");
    ++in[head[e]];
    ++out[head[e] == a ? b : a];
  }
  DiscrepancyReport rep;
  rep.per_node.resize(g.node_count());
  for (int v = 0; v < g.node_count(); ++v) {
    rep.per_node[v] = std::abs(in[v] - out[v]);
    rep.max = std::max(rep.max, rep.per_node[v]);
  }
  return rep;
}

Verdict check_sinkless(const SimGraph& g, std::span<const int> head) {
  if (head.size() != g.edge_count()) throw Error(Errc::InvalidInput, "orientation does not cover every edge");
  std::vector<int> out_deg(g.node_count(), 0);
  for (std::size_t e = 0; e < head.size(); ++e) {
    const auto [a, b] = g.edge(e);
    if (head[e] != a && head[e] != b) throw Error(Errc::InvalidInput, "head is not an endpoint");
    ++out_deg[head[e] == a ? b : a];
  }
  Verdict v;
  for (int x = 0; x < g.node_count(); ++x)
    if (out_deg[x] == 0) flag(v, x, "sink");
  return v;
}

Verdict check_proper_coloring(const SimGraph& g, std::span<const int> color) {
  if (color.size() != static_cast<std::size_t>(g.node_count()))
    throw Error(Errc::IncompleteColoring, "coloring does not cover the graph");
  Verdict v;
  for (int x = 0; x < g.node_count(); ++x) {
    if (color[x] < 0) {
      flag(v, x, "uncolored");
      continue;
    }
    for (int y : g.neighbors(x))
      if (y != x && color[y] == color[x]) {
        flag(v, x, "shares color " + std::to_string(color[x]) + " with " + std::to_string(y));
        break;
      }
  }
  return v;
}

Verdict check_mis(const SimGraph& g, std::span<const int> members) {
  std::vector<char> in(g.node_count(), 0);
  for (int m : members) {
    if (m < 0 || m >= g.node_count()) throw Error(Errc::IndexOutOfRange, "member out of range");
    in[m] = 1;
  }
  Verdict v;
  for (int x = 0; x < g.node_count(); ++x) {
    bool member_nbr = false;
    for (int y : g.neighbors(x)) member_nbr |= in[y] && y != x;
    if (in[x] && member_nbr) flag(v, x, "member with a member neighbor");
    if (!in[x] && !member_nbr) flag(v, x, "could be added");
  }
  return v;
}

namespace {

bool in_band(int count, int d, double eps) {
  return count >= (0.5 - eps) * d - 1e-9 && count <= (0.5 + eps) * d + 1e-9;
}

}  // namespace

Verdict check_uniform_split(const BipartiteInstance& b, std::span<const Color> coloring, double eps, int min_degree) {
  if (coloring.size() != static_cast<std::size_t>(b.right_count()))
    throw Error(Errc::IncompleteColoring, "coloring does not cover V");
  Verdict v;
  for (int u = 0; u < b.left_count(); ++u) {
    const int d = b.left_degree(u);
    if (d < min_degree) continue;
    int red = 0, blue = 0;
    for (int x : b.left_neighbors(u)) {
      red += coloring[x] == Color::Red;
      blue += coloring[x] == Color::Blue;
    }
    if (!in_band(red, d, eps) || !in_band(blue, d, eps))
      flag(v, u, "red " + std::to_string(red) + ", blue " + std::to_string(blue) + " of " + std::to_string(d));
  }
  return v;
}

Verdict check_uniform_split(const SimGraph& g, std::span<const Color> side, double eps, int min_degree) {
  if (side.size() != static_cast<std::size_t>(g.node_count()))
    throw Error(Errc::IncompleteColoring, "partition does not cover the graph");
  Verdict v;
  for (int x = 0; x < g.node_count(); ++x) {
    const int d = g.degree(x);
    if (d < min_degree) continue;
    int red = 0, blue = 0;
    for (int y : g.neighbors(x)) {
      red += side[y] == Color::Red;
      blue += side[y] == Color::Blue;
    }
    if (!in_band(red, d, eps) || !in_band(blue, d, eps))
      flag(v, x, "red " + std::to_string(red) + ", blue " + std::to_string(blue) + " of " + std::to_string(d));
  }
  return v;
}

}  // namespace splitsim
