#pragma once

// Experiment runner: generate an input per repetition, run one algorithm,
// verify its certificate and collect metrics into a versioned report.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace splitsim {

using nlohmann::json;

inline constexpr int kReportSchemaVersion = 1;

struct ExperimentConfig {
  std::string algo;
  std::string generator;
  json generator_params = json::object();
  json algo_params = json::object();
  std::uint64_t seed = 1;
  int reps = 1;
  int threads = 0;           // 0: hardware concurrency
  bool wall_time = false;    // off keeps reports byte-identical across replays
  bool certificates = true;  // embed certificates for re-verification
};

json config_to_json(const ExperimentConfig& c);
/// Error{InvalidInput} on unknown or malformed fields.
ExperimentConfig config_from_json(const json& j);

/// Instance JSON (bipartite or graph) of a generator kind. Deterministic in seed.
json generate(const std::string& kind, const json& params, std::uint64_t seed);
std::vector<std::string> generator_kinds();
std::vector<std::string> algorithm_names();
/// Whether an algorithm consumes a graph (otherwise a bipartite instance).
bool algorithm_takes_graph(const std::string& algo);

struct RunRecord {
  int rep = 0;
  std::uint64_t seed = 0;
  bool valid = false;
  int violations = 0;
  std::string error;  // errc name and message when the algorithm threw
  json metrics = json::object();
  json ledger = json::object();
  json certificate;   // null when absent
  double wall_ms = 0;
};

/// Output of one algorithm run on one input.
struct Outcome {
  json certificate;  // null when the algorithm emits none
  json metrics = json::object();
  json ledger = json::object();
};

/// Runs `algo` on an instance or graph JSON. Throws what the algorithm throws.
Outcome run_algorithm(const std::string& algo, const json& input, const json& params, std::uint64_t seed);

struct Report {
  ExperimentConfig config;
  std::vector<RunRecord> runs;
  json aggregate;
};

Report run_experiment(const ExperimentConfig& config);
json report_to_json(const Report& r);
std::string report_to_csv(const Report& r);

/// Regenerates each row's input from the embedded config and re-checks its
/// certificate. Returns the number of rows that fail.
int reverify_report(const json& report);

}  // namespace splitsim
