#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "splitsim/graph.hpp"
#include "splitsim/ledger.hpp"
#include "splitsim/weak_splitting.hpp"

namespace splitsim {

struct MultiColoring {
  std::vector<int> color;  // per V-node, in [0, palette)
  int palette = 0;
};

struct MulticolorParams {
  int C = 2;
  double lambda = 0.5;
  double alpha = 8.0;   // virtual nodes below (alpha / lambda) ln n are dropped
  double beta = 16.0;   // required min U-degree beta ln^2 n
  int retry_limit = 10;
};

struct MulticolorResult {
  MultiColoring coloring;
  RoundLedger ledger;
  int iterations = 0;
  int retries = 0;
  double lambda_achieved = 0;  // the lambda the output is checked against
};

/// 3 if lambda >= 2/3, else ceil(3 / lambda). Error{ParamViolation} if that exceeds C.
int choose_cprime(int C, double lambda);

/// Independent uniform color in [0, C_eff) per V-node.
MultiColoring random_multicolor(const BipartiteInstance& b, int C_eff, std::uint64_t seed);

/// Random C_eff-coloring, checked per U-node against ceil(lambda * deg) and
/// redrawn on failure. Error{RetryExhausted} after retry_limit redraws.
MulticolorResult multicolor_split_base(const BipartiteInstance& b, int C_eff, double lambda, std::uint64_t seed,
                                       int retry_limit = 10);

/// (C, lambda)-multicolor splitter used by multicolor_split_iterate.
using MulticolorSolver =
    std::function<MulticolorResult(const BipartiteInstance&, int C, double lambda, std::uint64_t seed)>;

/// multicolor_split_base with choose_cprime(C, lambda) colors.
MulticolorSolver default_multicolor_solver(int retry_limit = 10);

/// Refines a one-color start ceil(log_{1/lambda}(2 log n)) times. Each round
/// every U-node gets one virtual node per current color among its neighbors;
/// virtual nodes below (alpha/lambda) ln n_i are dropped; the solver colors the
/// rest and colors are combined as old * P + new. Output is checked against
/// lambda_achieved = max(lambda^i, 1/(2 log n)).
MulticolorResult multicolor_split_iterate(const BipartiteInstance& b, const MulticolorParams& params,
                                          const MulticolorSolver& solver, std::uint64_t seed = 0);

/// Weak splitting from a weak multicoloring: each U-node keeps its lowest
/// neighbor of each of its first ceil(2 log n) colors; the colors then schedule
/// the derandomized solver on the trimmed instance.
/// Error{NotAWeakMulticolorSplitting} if some U-node sees too few colors.
WeakSplitResult weak_multicolor_to_weaksplit(const BipartiteInstance& b, const MultiColoring& mc);

/// The trimmed instance used above.
BipartiteInstance weak_multicolor_trim(const BipartiteInstance& b, const MultiColoring& mc);

/// P(Bin(d, 1/cprime) >= ceil(lambda d)), exact (d <= 60).
double exact_color_tail(int d, int cprime, double lambda);
/// C(d, k) / cprime^k with k = ceil(lambda d).
double color_tail_bound(int d, int cprime, double lambda);
/// (e / (lambda cprime))^(lambda d).
double color_tail_relaxed_bound(int d, int cprime, double lambda);

}  // namespace splitsim
