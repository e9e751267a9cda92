#include "splitsim/multicolor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "splitsim/error.hpp"
#include "splitsim/rng.hpp"

namespace splitsim {

namespace {

int kceil(double x) { return static_cast<int>(std::ceil(x - 1e-9)); }

// Largest same-color count over U-nodes, relative to ceil(lambda * deg).
bool within(const BipartiteInstance& b, const std::vector<int>& color, int palette, double lambda) {
  std::vector<int> count(palette, 0);
  bool ok = true;
  for (int u = 0; u < b.left_count() && ok; ++u) {
    const int cap = kceil(lambda * b.left_degree(u));
    for (int v : b.left_neighbors(u))
      if (++count[color[v]] > cap) ok = false;
    for (int v : b.left_neighbors(u)) count[color[v]] = 0;
  }
  return ok;
}

// Binomial coefficient as a double; exact while it fits 53 bits.
double choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

}  // namespace

int choose_cprime(int C, double lambda) {
  if (!(lambda > 0)) throw Error(Errc::ParamViolation, "lambda must be positive");
  const int cp = lambda >= 2.0 / 3.0 ? 3 : kceil(3.0 / lambda);
  if (cp > C) throw Error(Errc::ParamViolation, "C' = " + std::to_string(cp) + " exceeds C = " + std::to_string(C));
  return cp;
}

MultiColoring random_multicolor(const BipartiteInstance& b, int C_eff, std::uint64_t seed) {
  if (C_eff < 1) throw Error(Errc::ParamViolation, "need at least one color");
  MultiColoring mc;
  mc.palette = C_eff;
  mc.color.resize(b.right_count());
  for (int v = 0; v < b.right_count(); ++v) {
    NodeRng rng(seed, static_cast<std::uint64_t>(v), 2);
    mc.color[v] = static_cast<int>(rng.below(static_cast<std::uint64_t>(C_eff)));
  }
  return mc;
}

MulticolorResult multicolor_split_base(const BipartiteInstance& b, int C_eff, double lambda, std::uint64_t seed,
                                       int retry_limit) {
  MulticolorResult res;
  for (int a = 0; a <= retry_limit; ++a) {
    res.coloring = random_multicolor(b, C_eff, substream(seed, static_cast<std::uint64_t>(a)));
    res.ledger.add("multicolor-attempt-" + std::to_string(a), 1, 1.0, "color + check");
    if (within(b, res.coloring.color, C_eff, lambda)) {
      res.retries = a;
      res.lambda_achieved = lambda;
      return res;
    }
  }
  throw Error(Errc::RetryExhausted, "random multicoloring failed " + std::to_string(retry_limit + 1) + " times");
}

MulticolorSolver default_multicolor_solver(int retry_limit) {
  return [retry_limit](const BipartiteInstance& h, int C, double lambda, std::uint64_t seed) {
    return multicolor_split_base(h, choose_cprime(C, lambda), lambda, seed, retry_limit);
  };
}

MulticolorResult multicolor_split_iterate(const BipartiteInstance& b, const MulticolorParams& p,
                                          const MulticolorSolver& solver, std::uint64_t seed) {
  if (b.node_count() < 4) throw Error(Errc::PreconditionSize, "instance needs n >= 4");
  if (!(p.lambda > 0) || p.lambda > 0.5) throw Error(Errc::ParamViolation, "lambda must lie in (0, 1/2]");
  if (p.lambda < 2.0 / p.C) throw Error(Errc::ParamViolation, "lambda below 2/C");
  const double n = static_cast<double>(b.node_count());
  const double logn = log2n(n);
  const double floor_lambda = 1.0 / (2 * logn);
  if (b.left_count() > 0 && b.min_left_degree() < p.beta * std::log(n) * std::log(n))
    throw Error(Errc::PreconditionDegree, "min U-degree below beta ln^2 n");

  MulticolorResult res;
  if (p.lambda <= floor_lambda) {
    res = solver(b, p.C, p.lambda, seed);
    res.iterations = 0;
    res.lambda_achieved = p.lambda;
    return res;
  }

  const int iters = kceil(std::log(2 * logn) / std::log(1 / p.lambda));
  // C^i <= C (2 log n)^(1/eps) for lambda = C^-eps.
  const double eps = std::log(1 / p.lambda) / std::log(static_cast<double>(p.C));
  if (iters * std::log(static_cast<double>(p.C)) >
      std::log(static_cast<double>(p.C)) + std::log(2 * logn) / eps + 1e-9)
    throw Error(Errc::ParamViolation, "palette bound C^i exceeds C (2 log n)^(1/eps)");

  std::vector<std::int64_t> color(b.right_count(), 0);
  std::int64_t palette = 1;
  for (int it = 1; it <= iters; ++it) {
    // Virtual node per (u, color present at u).
    std::vector<std::vector<int>> groups;
    for (int u = 0; u < b.left_count(); ++u) {
      std::map<std::int64_t, std::vector<int>> by_color;
      for (int v : b.left_neighbors(u)) by_color[color[v]].push_back(v);
      for (auto& [c, vs] : by_color) groups.push_back(std::move(vs));
    }
    const double ni = static_cast<double>(groups.size() + b.right_count());
    const double keep = p.alpha / p.lambda * std::log(ni);
    std::vector<Edge> es;
    int kept = 0;
    for (const auto& g : groups) {
      if (g.size() < keep) continue;
      for (int v : g) es.emplace_back(kept, v);
      ++kept;
    }
    const BipartiteInstance h = build_bipartite(kept, b.right_count(), std::move(es));
    MulticolorResult step = solver(h, p.C, p.lambda, substream(seed, 1000 + static_cast<std::uint64_t>(it)));
    const int sub = step.coloring.palette;
    if (palette > (std::int64_t{1} << 40) / std::max(sub, 1))
      throw Error(Errc::ParamViolation, "palette overflow");
    for (int v = 0; v < b.right_count(); ++v) color[v] = color[v] * sub + step.coloring.color[v];
    palette *= sub;
    res.ledger.append(step.ledger, "iteration-" + std::to_string(it) + "/");
    res.retries += step.retries;
  }
  res.iterations = iters;
  res.coloring.palette = static_cast<int>(palette);
  res.coloring.color.assign(color.begin(), color.end());
  res.lambda_achieved = std::max(std::pow(p.lambda, iters), floor_lambda);
  if (!within(b, res.coloring.color, res.coloring.palette, res.lambda_achieved))
    throw Error(Errc::SelfCheckFailed, "iterated multicoloring exceeds lambda " + std::to_string(res.lambda_achieved));
  return res;
}

BipartiteInstance weak_multicolor_trim(const BipartiteInstance& b, const MultiColoring& mc) {
  if (mc.color.size() != static_cast<std::size_t>(b.right_count()))
    throw Error(Errc::NotAWeakMulticolorSplitting, "multicoloring does not cover V");
  const int need = kceil(2 * log2n(static_cast<double>(b.node_count())));
  std::vector<Edge> es;
  for (int u = 0; u < b.left_count(); ++u) {
    std::map<int, int> lowest;  // color -> lowest V-id
    for (int v : b.left_neighbors(u)) lowest.emplace(mc.color[v], v);  // neighbors ascend
    if (static_cast<int>(lowest.size()) < need)
      throw Error(Errc::NotAWeakMulticolorSplitting, "U-node " + std::to_string(u) + " sees " +
                                                         std::to_string(lowest.size()) + " colors, needs " +
                                                         std::to_string(need));
    int taken = 0;
    for (auto [c, v] : lowest) {
      if (taken++ == need) break;
      es.emplace_back(u, v);
    }
  }
  return b.with_edges(std::move(es));
}

WeakSplitResult weak_multicolor_to_weaksplit(const BipartiteInstance& b, const MultiColoring& mc) {
  const BipartiteInstance trimmed = weak_multicolor_trim(b, mc);
  WeakSplitResult res = derandomized_weak_split_scheduled(trimmed, mc.color);
  for (int u = 0; u < b.left_count(); ++u) {
    bool red = false, blue = false;
    for (int v : b.left_neighbors(u)) {
      red |= res.coloring[v] == Color::Red;
      blue |= res.coloring[v] == Color::Blue;
    }
    if (!(red && blue)) throw Error(Errc::SelfCheckFailed, "U-node " + std::to_string(u) + " unsatisfied");
  }
  return res;
}

double exact_color_tail(int d, int cprime, double lambda) {
  if (d > 60) throw Error(Errc::InvalidInput, "exact tail limited to d <= 60");
  const int k = kceil(lambda * d);
  const double p = 1.0 / cprime;
  double s = 0;
  for (int j = k; j <= d; ++j) s += choose(d, j) * std::pow(p, j) * std::pow(1 - p, d - j);
  return s;
}

double color_tail_bound(int d, int cprime, double lambda) {
  const int k = kceil(lambda * d);
  return choose(d, k) * std::pow(1.0 / cprime, k);
}

double color_tail_relaxed_bound(int d, int cprime, double lambda) {
  return std::pow(std::exp(1.0) / (lambda * cprime), lambda * d);
}

}  // namespace splitsim
