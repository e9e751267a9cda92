#include <doctest.h>

#include "oracles.hpp"
#include "splitsim/error.hpp"
#include "splitsim/generators.hpp"
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

}  // namespace

TEST_CASE("checkers agree with brute force") {
  for (const auto& t : oracles::all()) {
    INFO(t.name);
    CHECK(t.checks > 0);
    CHECK(t.mismatches == 0);
  }
}

TEST_CASE("weak splitting checker errors") {
  auto b = complete_bipartite(2, 3);
  CHECK(code_of([&] { check_weak_splitting(b, TwoColoring{Color::Red, Color::Blue}); }) == Errc::IncompleteColoring);
  CHECK(code_of([&] { check_weak_splitting(b, TwoColoring{Color::Red, Color::Blue, Color::Uncolored}); }) ==
        Errc::IncompleteColoring);
  auto v = check_weak_splitting(b, TwoColoring{Color::Red, Color::Red, Color::Red});
  CHECK(!v.valid);
  CHECK(v.violations == std::vector<int>{0, 1});
  CHECK(v.details.size() == 2);
  CHECK(v.to_json()["valid"] == false);
}

TEST_CASE("multicolor checker errors") {
  auto b = complete_bipartite(1, 3);
  std::vector<int> mc{0, 1, 3};
  CHECK(code_of([&] { check_multicolor_splitting(b, mc, 3, 0.5); }) == Errc::IncompleteColoring);
}

TEST_CASE("orientation checkers") {
  auto g = cycle_graph(4);
  std::vector<int> head;
  for (const auto& [a, b] : g.edges()) head.push_back(b);
  auto rep = check_orientation_discrepancy(g, head);
  CHECK(rep.max <= 2);
  std::vector<int> bad(g.edge_count(), 0);
  bad[0] = 3;
  CHECK(code_of([&] { check_orientation_discrepancy(g, bad); }) == Errc::InvalidInput);
}

TEST_CASE("mis and coloring checkers on known sets") {
  auto c5 = cycle_graph(5);
  CHECK(check_mis(c5, std::vector<int>{0, 2}).valid);
  CHECK(!check_mis(c5, std::vector<int>{0}).valid);
  CHECK(!check_mis(c5, std::vector<int>{0, 1, 3}).valid);
  CHECK(check_proper_coloring(c5, std::vector<int>{0, 1, 0, 1, 2}).valid);
  CHECK(!check_proper_coloring(c5, std::vector<int>{0, 1, 0, 1, 0}).valid);
}
