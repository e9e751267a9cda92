#include "splitsim/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "splitsim/error.hpp"

namespace splitsim {

namespace {

std::vector<Edge> edges_from(const json& j) {
  std::vector<Edge> es;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw Error(Errc::InvalidInput, "edge must be a pair");
    es.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return es;
}

json edges_to(const std::vector<Edge>& es) {
  json out = json::array();
  for (const auto& [a, b] : es) out.push_back({a, b});
  return out;
}

template <class Fn>
auto guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidInput, e.what());
  }
}

}  // namespace

json to_json(const BipartiteInstance& b) {
  return {{"left", b.left_count()}, {"right", b.right_count()}, {"edges", edges_to(b.edges())}};
}

json to_json(const SimGraph& g) {
  return {{"kind", "graph"}, {"nodes", g.node_count()}, {"ids", g.ids()}, {"edges", edges_to(g.edges())}};
}

bool is_graph_json(const json& j) { return j.is_object() && j.value("kind", "") == "graph"; }

BipartiteInstance instance_from_json(const json& j) {
  return guarded([&] {
    if (is_graph_json(j)) throw Error(Errc::InvalidInput, "expected a bipartite instance, got a graph");
    return build_bipartite(j.at("left").get<int>(), j.at("right").get<int>(), edges_from(j));
  });
}

SimGraph graph_from_json(const json& j) {
  return guarded([&] {
    if (!is_graph_json(j)) throw Error(Errc::InvalidInput, "expected a graph");
    std::vector<std::int64_t> ids;
    if (j.contains("ids")) ids = j.at("ids").get<std::vector<std::int64_t>>();
    return SimGraph::from_edges(j.at("nodes").get<int>(), edges_from(j), false, std::move(ids));
  });
}

json two_coloring_certificate(const TwoColoring& c) {
  json values = json::array();
  for (Color x : c) values.push_back(x == Color::Red ? "red" : x == Color::Blue ? "blue" : "uncolored");
  return {{"type", "two-coloring"}, {"values", values}};
}

json multicoloring_certificate(const MultiColoring& mc, double lambda) {
  return {{"type", "multicoloring"}, {"values", mc.color}, {"palette", mc.palette}, {"lambda", lambda}};
}

json orientation_certificate(const EdgeOrientation& o) { return {{"type", "orientation"}, {"values", o.head}}; }

json mis_certificate(const std::vector<int>& members) { return {{"type", "mis"}, {"values", members}}; }

json coloring_certificate(const ProperColoring& pc) {
  return {{"type", "coloring"}, {"values", pc.color}, {"palette", pc.palette}};
}

TwoColoring two_coloring_from_json(const json& cert) {
  return guarded([&] {
    TwoColoring c;
    for (const auto& x : cert.at("values")) {
      const auto s = x.get<std::string>();
      c.push_back(s == "red" ? Color::Red : s == "blue" ? Color::Blue : Color::Uncolored);
    }
    return c;
  });
}

Verdict verify_certificate(const json& input, const json& cert) {
  return guarded([&]() -> Verdict {
    const auto type = cert.at("type").get<std::string>();
    const bool graph = is_graph_json(input);
    auto need = [&](bool want_graph) {
      if (graph != want_graph)
        throw Error(Errc::InvalidInput, "certificate type " + type + " needs a " +
                                            (want_graph ? "graph" : "bipartite instance"));
    };
    if (type == "two-coloring") {
      need(false);
      const auto b = instance_from_json(input);
      const auto c = two_coloring_from_json(cert);
      if (cert.contains("epsilon")) return check_uniform_split(b, c, cert.at("epsilon").get<double>());
      return check_weak_splitting(b, c);
    }
    if (type == "multicoloring") {
      need(false);
      const auto mc = cert.at("values").get<std::vector<int>>();
      return check_multicolor_splitting(instance_from_json(input), mc, cert.at("palette").get<int>(),
                                        cert.at("lambda").get<double>());
    }
    const auto g = graph_from_json(input);
    need(true);
    const auto values = cert.at("values").get<std::vector<int>>();
    if (type == "orientation") {
      Verdict v = check_sinkless(g, values);
      if (cert.contains("max_discrepancy")) {
        const auto rep = check_orientation_discrepancy(g, values);
        const int cap = cert.at("max_discrepancy").get<int>();
        if (rep.max > cap) {
          v.valid = false;
          v.details.push_back("discrepancy " + std::to_string(rep.max) + " > " + std::to_string(cap));
        }
      }
      return v;
    }
    if (type == "mis") return check_mis(g, values);
    if (type == "coloring") {
      Verdict v = check_proper_coloring(g, values);
      if (cert.contains("palette")) {
        const int palette = cert.at("palette").get<int>();
        for (int x = 0; x < g.node_count(); ++x)
          if (values[x] >= palette) {
            v.valid = false;
            v.violations.push_back(x);
            v.details.push_back("color " + std::to_string(values[x]) + " outside the palette");
          }
        std::sort(v.violations.begin(), v.violations.end());
        v.violations.erase(std::unique(v.violations.begin(), v.violations.end()), v.violations.end());
      }
      return v;
    }
    throw Error(Errc::InvalidInput, "unknown certificate type " + type);
  });
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidInput, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::InvalidInput, "cannot write " + path);
  out << text;
}

}  // namespace splitsim
