#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "splitsim/error.hpp"
#include "splitsim/generators.hpp"
#include "splitsim/reductions.hpp"
#include "splitsim/verify.hpp"

using namespace splitsim;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::InvalidInput;
}

TwoColoring walk_split(const BipartiteInstance& b, std::uint64_t seed) {
  auto c = oracles::walk_split(b, seed);
  REQUIRE(!c.empty());
  return c;
}

}  // namespace

TEST_CASE("sinkless_instance on K6") {
  auto g = complete_graph(6);
  auto inst = sinkless_instance(g);
  CHECK(inst.left_count() == 6);
  CHECK(inst.right_count() == 15);
  CHECK(inst.left_degree(0) == 5);
  CHECK(inst.left_degree(2) == 3);
  for (int e : inst.left_neighbors(2)) {
    auto [a, b] = g.edge(e);
    CHECK(std::min(a, b) == 2);
    CHECK(std::max(a, b) > 2);
  }
  CHECK(inst.rank() <= 2);
  CHECK(code_of([] { sinkless_instance(cycle_graph(6)); }) == Errc::MinDegreeTooSmall);
}

TEST_CASE("splitting_to_orientation") {
  auto g = complete_graph(6);
  auto inst = sinkless_instance(g);
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto c = walk_split(inst, s);
    REQUIRE(check_weak_splitting(inst, c).valid);
    auto o = splitting_to_orientation(g, inst, c);
    CHECK(check_sinkless(g, o.head).valid);
  }
  TwoColoring all_red(g.edge_count(), Color::Red);
  CHECK(code_of([&] { splitting_to_orientation(g, inst, all_red); }) == Errc::NotAWeakSplitting);

  // Red edges point to the larger ID, Blue edges to the smaller.
  auto c = walk_split(inst, 99);
  auto o = splitting_to_orientation(g, inst, c);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.edge(e);
    CHECK(o.head[e] == (c[e] == Color::Red ? std::max(a, b) : std::min(a, b)));
  }
}

TEST_CASE("sinkless pipeline on random graphs") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto g = min_degree_graph(30 + static_cast<int>(s % 40), 5, s);
    auto inst = sinkless_instance(g);
    CHECK(inst.rank() <= 2);
    CHECK(inst.min_left_degree() >= 3);
    auto o = splitting_to_orientation(g, inst, walk_split(inst, s));
    CHECK(check_sinkless(g, o.head).valid);
  }
}

TEST_CASE("pad_to_uniform") {
  auto g = SimGraph::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  auto p = pad_to_uniform(g, 4);
  CHECK(p.graph.degree(0) == 4);
  for (int v = 1; v < 5; ++v) CHECK(p.graph.degree(v) == 4);
  CHECK(p.graph.node_count() == 5 + 4 * 4);
  for (int v = 0; v < p.graph.node_count(); ++v) {
    CHECK(p.graph.degree(v) <= 4);
    CHECK(static_cast<bool>(p.gadget[v]) == (v >= 5));
  }

  auto iso = SimGraph::from_edges(1, {});
  auto q = pad_to_uniform(iso, 4);
  CHECK(q.graph.node_count() == 5);
  CHECK(q.graph.degree(0) == 4);
  CHECK(q.graph.edge_count() == 4 + 6);

  auto already = pad_to_uniform(complete_graph(5), 4);
  CHECK(already.graph.node_count() == 5);
  CHECK(code_of([] { pad_to_uniform(complete_graph(9), 3); }) == Errc::InvalidInput);
}

TEST_CASE("strong_split_bipartite") {
  StrongSplitOptions loose;
  loose.c_split = 0.01;
  auto two = build_bipartite(1, 2, {{0, 0}, {0, 1}});
  auto r = strong_split_bipartite(two, 0.25, loose);
  CHECK(r.coloring[0] != r.coloring[1]);

  auto half = build_bipartite(1, 6, {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
  r = strong_split_bipartite(half, 0.5, loose);
  CHECK(check_uniform_split(half, r.coloring, 0.5).valid);

  for (std::uint64_t s = 0; s < 20; ++s) {
    auto b = random_bipartite(4, 60, 40, 40, 4, s);
    r = strong_split_bipartite(b, 0.2, loose);
    CHECK(r.initial_estimator < 1);
    for (int u = 0; u < 4; ++u) {
      int red = 0;
      for (int v : b.left_neighbors(u)) red += r.coloring[v] == Color::Red;
      CHECK(red >= 16);
      CHECK(red <= 24);
    }
  }

  auto b = random_bipartite(40, 60, 10, 10, 10, 1);
  CHECK(code_of([&] { strong_split_bipartite(b, 0.1); }) == Errc::PreconditionDegree);
  CHECK(code_of([&] { strong_split_bipartite(b, 0.15, loose); }) == Errc::EstimatorOverflow);
  StrongSplitOptions lax;
  lax.strict = false;
  CHECK_NOTHROW(strong_split_bipartite(b, 0.1, lax));
}

TEST_CASE("greedy_base_coloring") {
  auto k4 = greedy_base_coloring(complete_graph(4));
  CHECK(k4.palette == 4);
  auto grid = grid_graph(5, 6);
  auto gc = greedy_base_coloring(grid);
  CHECK(gc.palette <= grid.max_degree() + 1);
  CHECK(check_proper_coloring(grid, gc.color).valid);
  CHECK(greedy_base_coloring(SimGraph{}).palette == 0);
}

TEST_CASE("coloring_via_splitting") {
  auto g = near_regular_graph(400, 40, 3);
  auto one = coloring_via_splitting(g, 0.2, 1);
  CHECK(one.levels == 1);
  CHECK(one.level_max_degree[0] <= 28);
  CHECK(one.coloring.palette <= 2 * (one.leaf_max_degree + 1));
  CHECK(check_proper_coloring(g, one.coloring.color).valid);

  auto two = coloring_via_splitting(g, 0.2, 2);
  CHECK(two.coloring.palette <= 4 * (two.leaf_max_degree + 1));
  CHECK(check_proper_coloring(g, two.coloring.color).valid);

  auto small = grid_graph(6, 6);
  auto base = coloring_via_splitting(small, 0.2, -1);
  CHECK(base.levels == 0);
  CHECK(base.coloring.palette <= small.max_degree() + 1);
}

TEST_CASE("greedy_mis") {
  CHECK(greedy_mis(path_graph(3)).size() >= 1);
  CHECK(greedy_mis(cycle_graph(5)).size() == 2);
  CHECK(greedy_mis(complete_graph(7)).size() == 1);
  auto p = petersen_graph();
  CHECK(check_mis(p, greedy_mis(p)).valid);
}

TEST_CASE("mis_via_splitting") {
  auto empty = SimGraph::from_edges(6, {});
  CHECK(mis_via_splitting(empty, 0.2).members.size() == 6);
  CHECK(mis_via_splitting(complete_graph(5), 0.2).members.size() == 1);
  for (std::uint64_t s = 0; s < 5; ++s) {
    auto g = near_regular_graph(300, 60, s);
    auto r = mis_via_splitting(g, 0.2);
    CHECK(check_mis(g, r.members).valid);
    CHECK(r.outer_steps >= 1);
    const double floor_frac = 1.0 / (80 * std::pow(std::log2(300.0), 3));
    for (double f : r.covered_fraction) CHECK(f >= floor_frac);
  }
}
