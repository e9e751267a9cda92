#include "splitsim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "splitsim/degree_splitting.hpp"
#include "splitsim/error.hpp"
#include "splitsim/generators.hpp"
#include "splitsim/io.hpp"
#include "splitsim/multicolor.hpp"
#include "splitsim/reductions.hpp"
#include "splitsim/rng.hpp"
#include "splitsim/verify.hpp"
#include "splitsim/weak_splitting.hpp"

namespace splitsim {

namespace {

int iparam(const json& p, const char* key) {
  if (!p.contains(key)) throw Error(Errc::InvalidInput, std::string("missing parameter ") + key);
  return p.at(key).get<int>();
}

template <class T>
T opt_param(const json& p, const char* key, T fallback) {
  return p.contains(key) ? p.at(key).get<T>() : fallback;
}

using Generator = std::function<json(const json&, std::uint64_t)>;

const std::map<std::string, Generator>& generators() {
  static const std::map<std::string, Generator> table{
      {"random-bipartite",
       [](const json& p, std::uint64_t s) {
         return to_json(random_bipartite(iparam(p, "left"), iparam(p, "right"), iparam(p, "min_degree"),
                                         iparam(p, "max_degree"), iparam(p, "rank"), s));
       }},
      {"left-regular",
       [](const json& p, std::uint64_t s) {
         return to_json(left_regular(iparam(p, "left"), iparam(p, "right"), iparam(p, "degree"), s));
       }},
      {"complete-bipartite",
       [](const json& p, std::uint64_t) { return to_json(complete_bipartite(iparam(p, "left"), iparam(p, "right"))); }},
      {"bipartite-tree",
       [](const json& p, std::uint64_t) {
         return to_json(bipartite_tree(iparam(p, "depth"), iparam(p, "u_deg"), iparam(p, "v_deg")));
       }},
      {"min-degree-graph",
       [](const json& p, std::uint64_t s) { return to_json(min_degree_graph(iparam(p, "n"), iparam(p, "min_degree"), s)); }},
      {"near-regular",
       [](const json& p, std::uint64_t s) { return to_json(near_regular_graph(iparam(p, "n"), iparam(p, "degree"), s)); }},
      {"complete", [](const json& p, std::uint64_t) { return to_json(complete_graph(iparam(p, "n"))); }},
      {"grid", [](const json& p, std::uint64_t) { return to_json(grid_graph(iparam(p, "rows"), iparam(p, "cols"))); }},
      {"cycle", [](const json& p, std::uint64_t) { return to_json(cycle_graph(iparam(p, "n"))); }},
      {"path", [](const json& p, std::uint64_t) { return to_json(path_graph(iparam(p, "n"))); }},
      {"petersen", [](const json&, std::uint64_t) { return to_json(petersen_graph()); }},
  };
  return table;
}

Mode mode_of(const json& p) {
  const auto m = opt_param<std::string>(p, "mode", "deterministic");
  if (m == "deterministic") return Mode::Deterministic;
  if (m == "randomized") return Mode::Randomized;
  throw Error(Errc::InvalidInput, "mode must be deterministic or randomized");
}

Outcome from_weak(const WeakSplitResult& r) {
  Outcome o;
  o.certificate = two_coloring_certificate(r.coloring);
  o.ledger = r.ledger.to_json();
  o.metrics["retries"] = r.retries;
  if (!r.delta_trace.empty()) o.metrics["delta_trace"] = r.delta_trace;
  if (!r.rank_trace.empty()) o.metrics["rank_trace"] = r.rank_trace;
  if (!r.estimator_trace.empty()) {
    o.metrics["estimator_initial"] = r.estimator_trace.front();
    o.metrics["estimator_final"] = r.estimator_trace.back();
  }
  if (!r.component_sizes.empty()) {
    o.metrics["component_sizes"] = r.component_sizes;
    o.metrics["max_component"] = *std::max_element(r.component_sizes.begin(), r.component_sizes.end());
  }
  return o;
}

using Algorithm = std::function<Outcome(const json&, const json&, std::uint64_t)>;

struct AlgoEntry {
  bool graph;
  Algorithm run;
};

const std::map<std::string, AlgoEntry>& algorithms() {
  static const std::map<std::string, AlgoEntry> table{
      {"random", {false, [](const json& in, const json&, std::uint64_t s) {
         Outcome o;
         o.certificate = two_coloring_certificate(random_weak_split(instance_from_json(in), s));
         return o;
       }}},
      {"derandomized", {false, [](const json& in, const json&, std::uint64_t) {
         return from_weak(derandomized_weak_split(instance_from_json(in)));
       }}},
      {"trim", {false, [](const json& in, const json&, std::uint64_t) {
         return from_weak(trim_then_split(instance_from_json(in)));
       }}},
      {"speedup", {false, [](const json& in, const json&, std::uint64_t) {
         return from_weak(weak_split_speedup(instance_from_json(in)));
       }}},
      {"delta6r", {false, [](const json& in, const json& p, std::uint64_t s) {
         return from_weak(weak_split_delta_ge_6r(instance_from_json(in), mode_of(p), s));
       }}},
      {"randomized", {false, [](const json& in, const json& p, std::uint64_t s) {
         RandomizedOptions opt;
         opt.c = opt_param(p, "c", opt.c);
         opt.retry_limit = opt_param(p, "retry_limit", opt.retry_limit);
         opt.budget_k = opt_param(p, "budget_k", opt.budget_k);
         return from_weak(randomized_weak_split(instance_from_json(in), s, opt));
       }}},
      {"high-girth", {false, [](const json& in, const json& p, std::uint64_t s) {
         HighGirthOptions opt;
         opt.c = opt_param(p, "c", opt.c);
         opt.c_prime = opt_param(p, "c_prime", opt.c_prime);
         return from_weak(high_girth_weak_split(instance_from_json(in), mode_of(p), s, opt));
       }}},
      {"shatter", {false, [](const json& in, const json& p, std::uint64_t s) {
         const auto b = instance_from_json(in);
         const bool det = mode_of(p) == Mode::Deterministic;
         RoundLedger ledger;
         auto r = det ? derandomized_shatter(b, &ledger) : shatter(b, s);
         if (!det) ledger = r.ledger;
         Outcome o;
         o.ledger = ledger.to_json();
         int sat = 0;
         for (char x : r.satisfied) sat += x;
         o.metrics["unsatisfied"] = b.left_count() - sat;
         o.metrics["residual_left"] = r.residual_left.size();
         o.metrics["residual_right"] = r.residual_right.size();
         int biggest = 0, min_deg = -1;
         for (const auto& c : connected_components(b, r.residual_left, r.residual_right)) {
           biggest = std::max(biggest, static_cast<int>(c.instance.node_count()));
           if (c.instance.left_count() > 0)
             min_deg = min_deg < 0 ? c.instance.min_left_degree() : std::min(min_deg, c.instance.min_left_degree());
         }
         o.metrics["max_component"] = biggest;
         o.metrics["residual_min_degree"] = min_deg;
         return o;
       }}},
      {"drr1", {false, [](const json& in, const json& p, std::uint64_t) {
         auto r = degree_rank_reduction_1(instance_from_json(in), opt_param(p, "epsilon", 0.2), opt_param(p, "k", 1));
         Outcome o;
         o.ledger = r.ledger.to_json();
         o.metrics["delta_trace"] = r.delta_trace;
         o.metrics["rank_trace"] = r.rank_trace;
         return o;
       }}},
      {"drr2", {false, [](const json& in, const json& p, std::uint64_t) {
         const auto b = instance_from_json(in);
         auto r = degree_rank_reduction_2(b, opt_param(p, "epsilon", 0.05), opt_param(p, "k", ceil_log2(std::max(1, b.rank()))));
         Outcome o;
         o.ledger = r.ledger.to_json();
         o.metrics["delta_trace"] = r.delta_trace;
         o.metrics["rank_trace"] = r.rank_trace;
         return o;
       }}},
      {"multicolor", {false, [](const json& in, const json& p, std::uint64_t s) {
         MulticolorParams mp;
         mp.C = opt_param(p, "C", mp.C);
         mp.lambda = opt_param(p, "lambda", mp.lambda);
         mp.alpha = opt_param(p, "alpha", mp.alpha);
         mp.beta = opt_param(p, "beta", mp.beta);
         auto r = multicolor_split_iterate(instance_from_json(in), mp, default_multicolor_solver(mp.retry_limit), s);
         Outcome o;
         o.certificate = multicoloring_certificate(r.coloring, r.lambda_achieved);
         o.ledger = r.ledger.to_json();
         o.metrics["iterations"] = r.iterations;
         o.metrics["retries"] = r.retries;
         o.metrics["palette"] = r.coloring.palette;
         o.metrics["lambda_achieved"] = r.lambda_achieved;
         return o;
       }}},
      {"strong-split", {false, [](const json& in, const json& p, std::uint64_t) {
         StrongSplitOptions opt;
         opt.c_split = opt_param(p, "c_split", opt.c_split);
         const double eps = opt_param(p, "epsilon", 0.2);
         auto r = strong_split_bipartite(instance_from_json(in), eps, opt);
         Outcome o;
         o.certificate = two_coloring_certificate(r.coloring);
         o.certificate["epsilon"] = eps;
         o.ledger = r.ledger.to_json();
         o.metrics["estimator_initial"] = r.initial_estimator;
         return o;
       }}},
      {"sinkless", {true, [](const json& in, const json&, std::uint64_t) {
         const auto g = graph_from_json(in);
         const auto inst = sinkless_instance(g);
         auto r = inst.min_left_degree() >= 6 * inst.rank() ? weak_split_delta_ge_6r(inst, Mode::Deterministic)
                                                             : derandomized_weak_split(inst);
         Outcome o;
         o.certificate = orientation_certificate(splitting_to_orientation(g, inst, r.coloring));
         o.ledger = r.ledger.to_json();
         o.metrics["instance_rank"] = inst.rank();
         o.metrics["instance_min_degree"] = inst.min_left_degree();
         return o;
       }}},
      {"coloring", {true, [](const json& in, const json& p, std::uint64_t) {
         auto r = coloring_via_splitting(graph_from_json(in), opt_param(p, "epsilon", 0.2), opt_param(p, "levels", -1));
         Outcome o;
         o.certificate = coloring_certificate(r.coloring);
         o.ledger = r.ledger.to_json();
         o.metrics["palette"] = r.coloring.palette;
         o.metrics["levels"] = r.levels;
         o.metrics["leaf_max_degree"] = r.leaf_max_degree;
         o.metrics["split_violations"] = r.split_violations;
         return o;
       }}},
      {"mis", {true, [](const json& in, const json& p, std::uint64_t) {
         auto r = mis_via_splitting(graph_from_json(in), opt_param(p, "epsilon", 0.2));
         Outcome o;
         o.certificate = mis_certificate(r.members);
         o.ledger = r.ledger.to_json();
         o.metrics["mis_size"] = r.members.size();
         o.metrics["outer_steps"] = r.outer_steps;
         o.metrics["heavy_iterations"] = r.heavy_iterations;
         if (!r.covered_fraction.empty())
           o.metrics["min_covered_fraction"] = *std::min_element(r.covered_fraction.begin(), r.covered_fraction.end());
         return o;
       }}},
      {"greedy-mis", {true, [](const json& in, const json&, std::uint64_t) {
         Outcome o;
         auto members = greedy_mis(graph_from_json(in));
         o.metrics["mis_size"] = members.size();
         o.certificate = mis_certificate(members);
         return o;
       }}},
      {"greedy-coloring", {true, [](const json& in, const json&, std::uint64_t) {
         Outcome o;
         auto pc = greedy_base_coloring(graph_from_json(in));
         o.metrics["palette"] = pc.palette;
         o.certificate = coloring_certificate(pc);
         return o;
       }}},
  };
  return table;
}

std::uint64_t rep_seed(std::uint64_t seed, int rep) { return substream(seed, static_cast<std::uint64_t>(rep) + 1); }

double percentile(std::vector<double> xs, double q) {
  std::sort(xs.begin(), xs.end());
  const double pos = q * (xs.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = static_cast<std::size_t>(std::ceil(pos));
  return xs[lo] + (xs[hi] - xs[lo]) * (pos - lo);
}

json aggregate(const std::vector<RunRecord>& runs, bool wall_time) {
  std::map<std::string, std::vector<double>> series;
  int valid = 0, errors = 0;
  for (const auto& r : runs) {
    valid += r.valid;
    errors += !r.error.empty();
    if (r.ledger.contains("total_simulated")) {
      series["rounds_simulated"].push_back(r.ledger["total_simulated"].get<double>());
      series["rounds_nominal"].push_back(r.ledger["total_nominal"].get<double>());
    }
    for (const auto& [k, v] : r.metrics.items())
      if (v.is_number()) series[k].push_back(v.get<double>());
    if (wall_time) series["wall_ms"].push_back(r.wall_ms);
  }
  json out{{"runs", runs.size()}, {"valid", valid}, {"errors", errors}};
  json metrics = json::object();
  for (const auto& [k, xs] : series) {
    double sum = 0;
    for (double x : xs) sum += x;
    metrics[k] = {{"count", xs.size()},       {"mean", sum / xs.size()},     {"p50", percentile(xs, 0.5)},
                  {"p90", percentile(xs, 0.9)}, {"p99", percentile(xs, 0.99)}, {"max", percentile(xs, 1.0)}};
  }
  out["metrics"] = metrics;
  return out;
}

RunRecord run_one(const ExperimentConfig& c, int rep) {
  RunRecord rec;
  rec.rep = rep;
  rec.seed = rep_seed(c.seed, rep);
  const auto start = std::chrono::steady_clock::now();
  try {
    const json input = generate(c.generator, c.generator_params, rec.seed);
    Outcome o = run_algorithm(c.algo, input, c.algo_params, substream(rec.seed, 1));
    rec.metrics = std::move(o.metrics);
    rec.ledger = std::move(o.ledger);
    rec.valid = true;
    if (!o.certificate.is_null()) {
      const Verdict v = verify_certificate(input, o.certificate);
      rec.valid = v.valid;
      rec.violations = std::max<int>(v.valid ? 0 : 1, static_cast<int>(v.violations.size()));
      if (c.certificates) rec.certificate = std::move(o.certificate);
    }
  } catch (const Error& e) {
    rec.valid = false;
    rec.error = e.what();
  }
  rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

}  // namespace

std::vector<std::string> generator_kinds() {
  std::vector<std::string> out;
  for (const auto& [k, _] : generators()) out.push_back(k);
  return out;
}

std::vector<std::string> algorithm_names() {
  std::vector<std::string> out;
  for (const auto& [k, _] : algorithms()) out.push_back(k);
  return out;
}

bool algorithm_takes_graph(const std::string& algo) {
  auto it = algorithms().find(algo);
  if (it == algorithms().end()) throw Error(Errc::InvalidInput, "unknown algorithm " + algo);
  return it->second.graph;
}

json generate(const std::string& kind, const json& params, std::uint64_t seed) {
  auto it = generators().find(kind);
  if (it == generators().end()) throw Error(Errc::InvalidInput, "unknown generator " + kind);
  try {
    return it->second(params, seed);
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidInput, e.what());
  }
}

Outcome run_algorithm(const std::string& algo, const json& input, const json& params, std::uint64_t seed) {
  const bool graph = algorithm_takes_graph(algo);
  if (graph != is_graph_json(input))
    throw Error(Errc::InvalidInput, algo + " needs a " + (graph ? "graph" : "bipartite instance"));
  try {
    return algorithms().at(algo).run(input, params, seed);
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidInput, e.what());
  }
}

json config_to_json(const ExperimentConfig& c) {
  return {{"algo", c.algo},       {"generator", c.generator}, {"generator_params", c.generator_params},
          {"algo_params", c.algo_params}, {"seed", c.seed},   {"reps", c.reps},
          {"threads", c.threads}, {"wall_time", c.wall_time}, {"certificates", c.certificates}};
}

ExperimentConfig config_from_json(const json& j) {
  static const std::set<std::string> known{"algo",    "generator", "generator_params", "algo_params", "seed",
                                           "reps",    "threads",   "wall_time",        "certificates"};
  if (!j.is_object()) throw Error(Errc::InvalidInput, "config must be an object");
  for (const auto& [k, _] : j.items())
    if (!known.count(k)) throw Error(Errc::InvalidInput, "unknown config field " + k);
  try {
    ExperimentConfig c;
    c.algo = j.at("algo").get<std::string>();
    c.generator = j.at("generator").get<std::string>();
    c.generator_params = j.value("generator_params", json::object());
    c.algo_params = j.value("algo_params", json::object());
    c.seed = j.value("seed", c.seed);
    c.reps = j.value("reps", c.reps);
    c.threads = j.value("threads", c.threads);
    c.wall_time = j.value("wall_time", c.wall_time);
    c.certificates = j.value("certificates", c.certificates);
    if (c.reps < 1) throw Error(Errc::InvalidInput, "reps must be positive");
    algorithm_takes_graph(c.algo);
    if (!generators().count(c.generator)) throw Error(Errc::InvalidInput, "unknown generator " + c.generator);
    return c;
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidInput, e.what());
  }
}

Report run_experiment(const ExperimentConfig& config) {
  Report rep;
  rep.config = config;
  rep.runs.resize(config.reps);
  int threads = config.threads > 0 ? config.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, config.reps);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < config.reps; i = next++) rep.runs[i] = run_one(config, i);
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  rep.aggregate = aggregate(rep.runs, config.wall_time);
  return rep;
}

json report_to_json(const Report& r) {
  json runs = json::array();
  for (const auto& x : r.runs) {
    json row{{"rep", x.rep}, {"seed", x.seed},     {"valid", x.valid},   {"violations", x.violations},
             {"error", x.error}, {"metrics", x.metrics}, {"ledger", x.ledger}};
    if (!x.certificate.is_null()) row["certificate"] = x.certificate;
    if (r.config.wall_time) row["wall_ms"] = x.wall_ms;
    runs.push_back(std::move(row));
  }
  return {{"schema_version", kReportSchemaVersion},
          {"config", config_to_json(r.config)},
          {"runs", std::move(runs)},
          {"aggregate", r.aggregate}};
}

std::string report_to_csv(const Report& r) {
  std::set<std::string> keys;
  for (const auto& x : r.runs)
    for (const auto& [k, v] : x.metrics.items())
      if (v.is_number()) keys.insert(k);
  std::ostringstream out;
  out << "schema_version,rep,seed,valid,violations,error,rounds_simulated,rounds_nominal";
  for (const auto& k : keys) out << ',' << k;
  if (r.config.wall_time) out << ",wall_ms";
  out << '\n';
  for (const auto& x : r.runs) {
    std::string err = x.error;
    std::replace(err.begin(), err.end(), '"', '\'');
    out << kReportSchemaVersion << ',' << x.rep << ',' << x.seed << ',' << (x.valid ? 1 : 0) << ',' << x.violations
        << ",\"" << err << "\",";
    if (x.ledger.contains("total_simulated"))
      out << x.ledger["total_simulated"].dump() << ',' << x.ledger["total_nominal"].dump();
    else
      out << ',';
    for (const auto& k : keys) {
      out << ',';
      if (x.metrics.contains(k)) out << x.metrics[k].dump();
    }
    if (r.config.wall_time) out << ',' << x.wall_ms;
    out << '\n';
  }
  return out.str();
}

int reverify_report(const json& report) {
  if (report.value("schema_version", 0) != kReportSchemaVersion)
    throw Error(Errc::InvalidInput, "unsupported report schema");
  const ExperimentConfig c = config_from_json(report.at("config"));
  int failures = 0;
  for (const auto& row : report.at("runs")) {
    if (!row.contains("certificate")) continue;
    const json input = generate(c.generator, c.generator_params, row.at("seed").get<std::uint64_t>());
    if (!verify_certificate(input, row.at("certificate")).valid) ++failures;
  }
  return failures;
}

}  // namespace splitsim
