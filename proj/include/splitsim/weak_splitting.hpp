#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "splitsim/graph.hpp"
#include "splitsim/ledger.hpp"

namespace splitsim {

enum class Color : std::uint8_t { Uncolored = 0, Red = 1, Blue = 2 };

/// One entry per V-node.
using TwoColoring = std::vector<Color>;

enum class Mode { Deterministic, Randomized };

struct WeakSplitResult {
  TwoColoring coloring;
  RoundLedger ledger;
  int retries = 0;
  std::vector<double> estimator_trace;  // derandomized solver: total before and after each decision
  std::vector<int> delta_trace;         // reduction pipelines: min U-degree per iteration
  std::vector<int> rank_trace;
  std::vector<std::size_t> component_sizes;  // shattering pipelines: residual pieces of the last attempt
};

/// Uniform Red/Blue per V-node from the node's own stream. No validity claim.
TwoColoring random_weak_split(const BipartiteInstance& b, std::uint64_t seed);

/// Conditional expectations over V in schedule order. Per U-node the estimator
/// carries P(no Blue) + P(no Red) of the remaining random completion; each
/// V-node takes the color with the smaller total, ties to Red.
/// Requires n >= 4 and δ >= 2 log n.
WeakSplitResult derandomized_weak_split(const BipartiteInstance& b);

/// Same program, but the caller supplies the schedule class of every V-node
/// (validated as a proper coloring of B^2 restricted to V).
WeakSplitResult derandomized_weak_split_scheduled(const BipartiteInstance& b, std::span<const int> v_class);

/// Keeps the ceil(2 log n) lowest V-ids per U-node, then derandomizes.
WeakSplitResult trim_then_split(const BipartiteInstance& b);

/// Degree-rank reduction I with k = floor(log(δ / (12 log n))), eps = min(1/k, 1/3),
/// followed by trim_then_split; falls back to trim_then_split if δ <= 48 log n.
WeakSplitResult weak_split_speedup(const BipartiteInstance& b);

/// Rank-1 finish: each U-node marks its lowest neighbor Red and the next one
/// Blue; untouched V-nodes are Red. Needs rank <= 1 and δ >= 2.
TwoColoring rank_one_endgame(const BipartiteInstance& b);

/// δ >= 6r pipeline. Above 2 log n: speedup (deterministic) or random with
/// retries (randomized). Below: ceil(log r) rounds of degree-rank reduction II,
/// then the rank-1 finish.
WeakSplitResult weak_split_delta_ge_6r(const BipartiteInstance& b, Mode mode, std::uint64_t seed = 0);

struct ShatterResult {
  TwoColoring coloring;              // partial
  std::vector<char> satisfied;       // per U-node
  std::vector<int> residual_left;    // unsatisfied U-nodes
  std::vector<int> residual_right;   // uncolored V-nodes
  RoundLedger ledger;
};

/// Red 1/4, Blue 1/4, uncolored 1/2; then every U-node with more than 3/4 of
/// its neighbors colored uncolors all of them.
ShatterResult shatter(const BipartiteInstance& b, std::uint64_t seed);

/// Applies the uncoloring rule to a tentative coloring and derives the residual.
ShatterResult finish_shatter(const BipartiteInstance& b, TwoColoring tentative);

struct RandomizedOptions {
  double c = 32.0;          // gate δ >= c log(r log n)
  int retry_limit = 10;
  double budget_k = 64.0;   // component budget K r^4 log^6 n
};

WeakSplitResult randomized_weak_split(const BipartiteInstance& b, std::uint64_t seed,
                                      const RandomizedOptions& opt = {});

struct HighGirthOptions {
  double c = 4.0;        // δ >= c sqrt(ln n) (det) or c sqrt(ln(Δ r ln n)) (rand)
  double c_prime = 1.0;  // Δ >= c' ln r
  int retry_limit = 10;
};

/// Requires girth >= 10.
WeakSplitResult high_girth_weak_split(const BipartiteInstance& b, Mode mode, std::uint64_t seed = 0,
                                      const HighGirthOptions& opt = {});

/// Estimator-guided shattering (SLOCAL(4) on the B^4 schedule) without the
/// endgame; exposed for measurements.
ShatterResult derandomized_shatter(const BipartiteInstance& b, RoundLedger* ledger = nullptr);

}  // namespace splitsim
