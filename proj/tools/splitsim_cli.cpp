// splitsim: generate instances, run algorithms and experiments, verify certificates.
// Exit codes: 0 all valid, 2 some violation, 1 error.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "splitsim/error.hpp"
#include "splitsim/harness.hpp"
#include "splitsim/io.hpp"

using namespace splitsim;

namespace {

constexpr int kValid = 0;
constexpr int kError = 1;
constexpr int kViolation = 2;

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-")
    std::cout << text;
  else
    write_text(out, text);
}

json parse_json_arg(const std::string& text) {
  if (text.empty()) return json::object();
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidInput, std::string("bad JSON argument: ") + e.what());
  }
}

json load(const std::string& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidInput, path + ": " + e.what());
  }
}

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("splitsim");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* level = std::getenv("SPLIT_LOG");
  spdlog::set_level(level ? spdlog::level::from_str(level) : spdlog::level::warn);
}

struct ExperimentFlags {
  std::string config, algo, generator, gen_params, algo_params, out, format = "json";
  std::uint64_t seed = 1;
  int reps = 1, threads = 0;
};

void add_experiment_flags(CLI::App* cmd, ExperimentFlags& f) {
  cmd->add_option("--config", f.config, "experiment config JSON file");
  cmd->add_option("--algo", f.algo, "algorithm name");
  cmd->add_option("--generator", f.generator, "generator kind");
  cmd->add_option("--gen-params", f.gen_params, "generator parameters as JSON");
  cmd->add_option("--algo-params", f.algo_params, "algorithm parameters as JSON");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--reps", f.reps, "repetitions");
  cmd->add_option("--threads", f.threads, "worker threads (0: all cores)");
  cmd->add_option("--out", f.out, "output file (default stdout)");
  cmd->add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

ExperimentConfig config_of(const ExperimentFlags& f, CLI::App* cmd) {
  ExperimentConfig c;
  if (!f.config.empty()) c = config_from_json(load(f.config));
  if (cmd->count("--algo")) c.algo = f.algo;
  if (cmd->count("--generator")) c.generator = f.generator;
  if (cmd->count("--gen-params")) c.generator_params = parse_json_arg(f.gen_params);
  if (cmd->count("--algo-params")) c.algo_params = parse_json_arg(f.algo_params);
  if (cmd->count("--seed")) c.seed = f.seed;
  if (cmd->count("--reps")) c.reps = f.reps;
  if (cmd->count("--threads")) c.threads = f.threads;
  return config_from_json(config_to_json(c));
}

int finish_report(const Report& r, const ExperimentFlags& f) {
  emit(f.out, f.format == "csv" ? report_to_csv(r) : report_to_json(r).dump(2) + "\n");
  const int valid = r.aggregate["valid"].get<int>();
  spdlog::info("{} of {} runs valid", valid, r.runs.size());
  return valid == static_cast<int>(r.runs.size()) ? kValid : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Splitting-problem simulator and verifier for the LOCAL model"};
  app.require_subcommand(1);

  std::string kind, params, out;
  std::uint64_t seed = 1;
  auto* gen = app.add_subcommand("generate", "write a generated instance or graph as JSON");
  gen->add_option("--kind", kind, "generator kind")->required()->check(CLI::IsMember(generator_kinds()));
  gen->add_option("--params", params, "generator parameters as JSON");
  gen->add_option("--seed", seed, "seed");
  gen->add_option("--out", out, "output file (default stdout)");

  ExperimentFlags run_flags;
  std::string input;
  auto* run = app.add_subcommand("run", "run an experiment, or one algorithm on --input");
  add_experiment_flags(run, run_flags);
  run->add_option("--input", input, "instance or graph JSON file");

  ExperimentFlags bench_flags;
  auto* bench = app.add_subcommand("bench", "run an experiment with wall time and print the aggregate");
  add_experiment_flags(bench, bench_flags);

  std::string instance_path, cert_path, report_path;
  auto* verify = app.add_subcommand("verify", "check a certificate, or re-check every row of a report");
  verify->add_option("--instance", instance_path, "instance or graph JSON file");
  verify->add_option("--cert", cert_path, "certificate JSON file");
  verify->add_option("--report", report_path, "report JSON file");
  verify->add_option("--out", out, "verdict output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      emit(out, generate(kind, parse_json_arg(params), seed).dump() + "\n");
      return kValid;
    }
    if (*run && !input.empty()) {
      const json in = load(input);
      const Outcome o = run_algorithm(run_flags.algo, in, parse_json_arg(run_flags.algo_params), run_flags.seed);
      json result{{"metrics", o.metrics}, {"ledger", o.ledger}};
      bool valid = true;
      if (!o.certificate.is_null()) {
        const Verdict v = verify_certificate(in, o.certificate);
        valid = v.valid;
        result["certificate"] = o.certificate;
        result["verdict"] = v.to_json();
      }
      emit(run_flags.out, result.dump(2) + "\n");
      return valid ? kValid : kViolation;
    }
    if (*run) return finish_report(run_experiment(config_of(run_flags, run)), run_flags);
    if (*bench) {
      ExperimentConfig c = config_of(bench_flags, bench);
      c.wall_time = true;
      c.certificates = false;
      const Report r = run_experiment(c);
      if (bench_flags.format == "csv") return finish_report(r, bench_flags);
      emit(bench_flags.out, json{{"config", config_to_json(c)}, {"aggregate", r.aggregate}}.dump(2) + "\n");
      return r.aggregate["valid"].get<std::size_t>() == r.runs.size() ? kValid : kViolation;
    }
    if (*verify) {
      if (!report_path.empty()) {
        const int failures = reverify_report(load(report_path));
        emit(out, json{{"failures", failures}}.dump() + "\n");
        return failures == 0 ? kValid : kViolation;
      }
      if (instance_path.empty() || cert_path.empty())
        throw Error(Errc::InvalidInput, "verify needs --instance and --cert, or --report");
      const Verdict v = verify_certificate(load(instance_path), load(cert_path));
      emit(out, v.to_json().dump(2) + "\n");
      return v.valid ? kValid : kViolation;
    }
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return kError;
  }
  return kError;
}
