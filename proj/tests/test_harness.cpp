#include <doctest.h>

#include "splitsim/error.hpp"
#include "splitsim/generators.hpp"
#include "splitsim/graph.hpp"
#include "splitsim/harness.hpp"
#include "splitsim/io.hpp"
#include "splitsim/weak_splitting.hpp"

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

ExperimentConfig weak_config() {
  ExperimentConfig c;
  c.algo = "derandomized";
  c.generator = "random-bipartite";
  c.generator_params = {{"left", 20}, {"right", 80}, {"min_degree", 14}, {"max_degree", 18}, {"rank", 6}};
  c.seed = 7;
  c.reps = 6;
  return c;
}

}  // namespace

TEST_CASE("instance json round trip") {
  auto b = random_bipartite(10, 30, 4, 6, 4, 3);
  auto j = to_json(b);
  auto back = instance_from_json(j);
  CHECK(back.edges() == b.edges());
  CHECK(to_json(back).dump() == j.dump());
  CHECK(std::is_sorted(j["edges"].begin(), j["edges"].end()));

  auto g = SimGraph::from_edges(3, {{0, 1}, {1, 2}}, false, {5, 9, 2});
  auto gj = to_json(g);
  CHECK(gj["kind"] == "graph");
  auto g2 = graph_from_json(gj);
  CHECK(g2.ids() == g.ids());
  CHECK(g2.edges() == g.edges());

  CHECK(code_of([] { instance_from_json(json{{"left", 1}}); }) == Errc::InvalidInput);
  CHECK(code_of([] { instance_from_json(json{{"left", 1}, {"right", 1}, {"edges", {{0, 3}}}}); }) ==
        Errc::IndexOutOfRange);
}

TEST_CASE("certificates verify") {
  auto b = complete_bipartite(2, 4);
  TwoColoring c{Color::Red, Color::Blue, Color::Red, Color::Blue};
  auto cert = two_coloring_certificate(c);
  CHECK(cert["values"][1] == "blue");
  CHECK(verify_certificate(to_json(b), cert).valid);
  TwoColoring bad(4, Color::Red);
  CHECK(!verify_certificate(to_json(b), two_coloring_certificate(bad)).valid);
  CHECK(code_of([&] { verify_certificate(to_json(b), mis_certificate({0})); }) == Errc::InvalidInput);
  CHECK(code_of([&] { verify_certificate(to_json(b), json{{"type", "nope"}, {"values", json::array()}}); }) ==
        Errc::InvalidInput);

  auto g = cycle_graph(5);
  CHECK(verify_certificate(to_json(g), mis_certificate({0, 2})).valid);
  CHECK(!verify_certificate(to_json(g), mis_certificate({0, 1})).valid);
  ProperColoring pc{{0, 1, 0, 1, 2}, 3};
  CHECK(verify_certificate(to_json(g), coloring_certificate(pc)).valid);
  pc.palette = 2;
  CHECK(!verify_certificate(to_json(g), coloring_certificate(pc)).valid);
}

TEST_CASE("generators by name") {
  auto t = generate("bipartite-tree", {{"depth", 4}, {"u_deg", 8}, {"v_deg", 3}}, 0);
  auto b = instance_from_json(t);
  CHECK(girth(b.to_graph(), 10) == 11);
  auto g = graph_from_json(generate("min-degree-graph", {{"n", 12}, {"min_degree", 5}}, 4));
  CHECK(g.min_degree() >= 5);
  auto rb = instance_from_json(generate("random-bipartite", weak_config().generator_params, 9));
  CHECK(rb.min_left_degree() == 14);
  CHECK(generate("grid", {{"rows", 3}, {"cols", 4}}, 0).dump() == generate("grid", {{"rows", 3}, {"cols", 4}}, 5).dump());
  CHECK(code_of([] { generate("nope", json::object(), 0); }) == Errc::InvalidInput);
  CHECK(code_of([] { generate("grid", {{"rows", 3}}, 0); }) == Errc::InvalidInput);
  CHECK(code_of([] { generate("random-bipartite", {{"left", 10}, {"right", 2}, {"min_degree", 3}, {"max_degree", 3}, {"rank", 1}}, 0); }) ==
        Errc::InfeasibleParams);
}

TEST_CASE("experiment replay is byte-identical") {
  auto c = weak_config();
  c.threads = 4;
  const auto a = report_to_json(run_experiment(c));
  CHECK(a.dump() == report_to_json(run_experiment(c)).dump());
  c.threads = 1;
  const auto b = report_to_json(run_experiment(c));
  CHECK(a["runs"].dump() == b["runs"].dump());
  CHECK(a["aggregate"].dump() == b["aggregate"].dump());
  auto rep = run_experiment(c);
  CHECK(rep.aggregate["valid"] == 6);
  CHECK(report_to_csv(rep) == report_to_csv(run_experiment(c)));
  for (const auto& r : rep.runs) CHECK(r.valid);
  CHECK(rep.runs[0].seed != rep.runs[1].seed);
}

TEST_CASE("reports reverify from disk form") {
  auto c = weak_config();
  auto j = json::parse(report_to_json(run_experiment(c)).dump());
  CHECK(reverify_report(j) == 0);
  j["runs"][0]["certificate"]["values"] = json(std::vector<std::string>(80, "red"));
  CHECK(reverify_report(j) == 1);
}

TEST_CASE("errors are recorded per run") {
  auto c = weak_config();
  c.algo = "delta6r";
  c.reps = 2;
  auto rep = run_experiment(c);
  for (const auto& r : rep.runs) {
    CHECK(!r.valid);
    CHECK(r.error.find("PreconditionRatio") != std::string::npos);
  }
  CHECK(rep.aggregate["errors"] == 2);
}

TEST_CASE("config json") {
  auto c = weak_config();
  auto back = config_from_json(config_to_json(c));
  CHECK(config_to_json(back) == config_to_json(c));
  auto j = config_to_json(c);
  j["bogus"] = 1;
  CHECK(code_of([&] { config_from_json(j); }) == Errc::InvalidInput);
  j.erase("bogus");
  j["algo"] = "nope";
  CHECK(code_of([&] { config_from_json(j); }) == Errc::InvalidInput);
}

TEST_CASE("graph algorithms through the runner") {
  for (const char* algo : {"sinkless", "mis", "coloring", "greedy-mis", "greedy-coloring"}) {
    ExperimentConfig c;
    c.algo = algo;
    c.generator = "min-degree-graph";
    c.generator_params = {{"n", 60}, {"min_degree", 24}};
    c.reps = 2;
    auto rep = run_experiment(c);
    INFO(algo);
    for (const auto& r : rep.runs) {
      INFO(r.error);
      CHECK(r.valid);
    }
  }
}
