#include "splitsim/weak_splitting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "splitsim/degree_splitting.hpp"
#include "splitsim/error.hpp"
#include "splitsim/local_engine.hpp"
#include "splitsim/rng.hpp"

namespace splitsim {

namespace {

int unsatisfied(const BipartiteInstance& b, const TwoColoring& col) {
  int bad = 0;
  for (int u = 0; u < b.left_count(); ++u) {
    bool red = false, blue = false;
    for (int v : b.left_neighbors(u)) {
      red |= col[v] == Color::Red;
      blue |= col[v] == Color::Blue;
    }
    if (!(red && blue)) ++bad;
  }
  return bad;
}

void self_check(const BipartiteInstance& b, const TwoColoring& col, const char* who) {
  if (col.size() != static_cast<std::size_t>(b.right_count()))
    throw Error(Errc::SelfCheckFailed, std::string(who) + ": coloring has wrong length");
  for (Color c : col)
    if (c == Color::Uncolored) throw Error(Errc::SelfCheckFailed, std::string(who) + ": incomplete coloring");
  if (int bad = unsatisfied(b, col); bad > 0)
    throw Error(Errc::SelfCheckFailed, std::string(who) + ": " + std::to_string(bad) + " unsatisfied U-nodes");
}

WeakSplitResult all_red(const BipartiteInstance& b) {
  WeakSplitResult res;
  res.coloring.assign(b.right_count(), Color::Red);
  return res;
}

void require_size(const BipartiteInstance& b) {
  if (b.node_count() < 4) throw Error(Errc::PreconditionSize, "instance needs n >= 4");
}

void require_log_degree(const BipartiteInstance& b) {
  require_size(b);
  const double need = 2 * log2n(static_cast<double>(b.node_count()));
  if (b.min_left_degree() < need)
    throw Error(Errc::PreconditionDelta, "min U-degree " + std::to_string(b.min_left_degree()) + " below 2 log n = " +
                                             std::to_string(need));
}

std::vector<int> full_schedule(const BipartiteInstance& b, std::span<const int> v_class) {
  std::vector<int> cls(b.node_count(), -1);
  std::copy(v_class.begin(), v_class.end(), cls.begin() + b.left_count());
  return cls;
}

WeakSplitResult run_derandomized(const BipartiteInstance& b, std::span<const int> schedule, RoundLedger ledger) {
  const int left = b.left_count();
  std::vector<int> red(left, 0), blue(left, 0), open(left, 0);
  double total = 0;
  for (int u = 0; u < left; ++u) {
    open[u] = b.left_degree(u);
    total += 2 * std::ldexp(1.0, -open[u]);
  }
  if (!(total < 1)) throw Error(Errc::EstimatorOverflow, "initial estimator " + std::to_string(total));

  WeakSplitResult res;
  res.estimator_trace.reserve(b.right_count() + 1);
  res.estimator_trace.push_back(total);

  auto program = [&](SLocalView<Color>& view) -> Color {
    const int x = view.center();
    double dr = 0;
    for (int u : view.neighbors(x)) {
      view.require(u, 1);
      const double p = std::ldexp(1.0, -open[u]);
      dr += (blue[u] == 0 ? p : 0.0) - (red[u] == 0 ? p : 0.0);
    }
    // Blue changes the total by exactly -dr.
    const Color c = dr <= 0 ? Color::Red : Color::Blue;
    total += c == Color::Red ? dr : -dr;
    for (int u : view.neighbors(x)) {
      --open[u];
      ++(c == Color::Red ? red[u] : blue[u]);
    }
    res.estimator_trace.push_back(total);
    return c;
  };
  const SimGraph g = b.to_graph();
  auto run = slocal_to_local<Color>(program, g, 2, schedule, "derandomized-split");
  ledger.append(run.ledger);

  res.coloring.resize(b.right_count());
  for (int v = 0; v < b.right_count(); ++v) res.coloring[v] = run.outputs[left + v].value_or(Color::Red);
  res.ledger = std::move(ledger);
  self_check(b, res.coloring, "derandomized_weak_split");
  return res;
}

}  // namespace

TwoColoring random_weak_split(const BipartiteInstance& b, std::uint64_t seed) {
  TwoColoring col(b.right_count());
  for (int v = 0; v < b.right_count(); ++v) {
    NodeRng rng(seed, static_cast<std::uint64_t>(v), 0);
    col[v] = (rng.next() & 1) ? Color::Blue : Color::Red;
  }
  return col;
}

WeakSplitResult derandomized_weak_split(const BipartiteInstance& b) {
  require_log_degree(b);
  const SimGraph g = b.to_graph();
  auto pc = power_graph_coloring(g, 2);
  std::vector<int> cls(b.node_count(), -1);
  for (int v = 0; v < b.right_count(); ++v) cls[b.left_count() + v] = pc.color[b.left_count() + v];
  return run_derandomized(b, cls, pc.ledger);
}

WeakSplitResult derandomized_weak_split_scheduled(const BipartiteInstance& b, std::span<const int> v_class) {
  require_log_degree(b);
  if (static_cast<int>(v_class.size()) != b.right_count())
    throw Error(Errc::InvalidScheduleColoring, "one class per V-node expected");
  return run_derandomized(b, full_schedule(b, v_class), RoundLedger{});
}

WeakSplitResult trim_then_split(const BipartiteInstance& b) {
  require_log_degree(b);
  const int keep = static_cast<int>(std::ceil(2 * log2n(static_cast<double>(b.node_count()))));
  std::vector<Edge> es;
  for (int u = 0; u < b.left_count(); ++u) {
    auto nb = b.left_neighbors(u);
    for (int i = 0; i < std::min<int>(keep, static_cast<int>(nb.size())); ++i) es.emplace_back(u, nb[i]);
  }
  const BipartiteInstance trimmed = b.with_edges(std::move(es));
  WeakSplitResult res = derandomized_weak_split(trimmed);
  RoundLedger ledger;
  ledger.append(res.ledger, "trimmed/");
  ledger.add("trim-nominal", 0, trimmed.rank() * log2n(static_cast<double>(b.node_count())), "r log n");
  res.ledger = std::move(ledger);
  self_check(b, res.coloring, "trim_then_split");
  return res;
}

WeakSplitResult weak_split_speedup(const BipartiteInstance& b) {
  require_log_degree(b);
  const double logn = log2n(static_cast<double>(b.node_count()));
  const int delta = b.min_left_degree();
  if (delta <= 48 * logn) return trim_then_split(b);

  const int k = static_cast<int>(std::floor(std::log2(delta / (12 * logn))));
  const double eps = std::min(1.0 / k, 1.0 / 3.0);
  auto red = degree_rank_reduction_1(b, eps, k);
  const BipartiteInstance& h = red.residual;
  if (h.min_left_degree() < 2 * logn)
    throw Error(Errc::ShrinkageViolation, "reduced min U-degree " + std::to_string(h.min_left_degree()));
  const double rank_cap = 24 * std::exp(1.0) * (static_cast<double>(b.rank()) / delta) * logn + 3;
  if (h.rank() > rank_cap)
    throw Error(Errc::ShrinkageViolation, "reduced rank " + std::to_string(h.rank()) + " above " + std::to_string(rank_cap));

  WeakSplitResult res = trim_then_split(h);
  RoundLedger ledger;
  ledger.append(red.ledger, "drr1/");
  ledger.append(res.ledger, "reduced/");
  res.ledger = std::move(ledger);
  res.delta_trace = std::move(red.delta_trace);
  res.rank_trace = std::move(red.rank_trace);
  self_check(b, res.coloring, "weak_split_speedup");
  return res;
}

TwoColoring rank_one_endgame(const BipartiteInstance& b) {
  if (b.rank() > 1) throw Error(Errc::InvalidInput, "rank-1 finish needs rank <= 1, got " + std::to_string(b.rank()));
  if (b.left_count() > 0 && b.min_left_degree() < 2)
    throw Error(Errc::PreconditionDelta, "rank-1 finish needs min U-degree >= 2");
  TwoColoring col(b.right_count(), Color::Red);
  for (int u = 0; u < b.left_count(); ++u) {
    auto nb = b.left_neighbors(u);
    col[nb[0]] = Color::Red;
    col[nb[1]] = Color::Blue;
  }
  return col;
}

namespace {

WeakSplitResult random_with_retries(const BipartiteInstance& b, std::uint64_t seed, int limit) {
  WeakSplitResult res;
  for (int a = 0; a <= limit; ++a) {
    res.coloring = random_weak_split(b, substream(seed, a));
    res.ledger.add("random-attempt-" + std::to_string(a), 1, 1.0, "color + check");
    if (unsatisfied(b, res.coloring) == 0) {
      res.retries = a;
      return res;
    }
  }
  throw Error(Errc::RetryExhausted, "random coloring failed " + std::to_string(limit + 1) + " times");
}

}  // namespace

WeakSplitResult weak_split_delta_ge_6r(const BipartiteInstance& b, Mode mode, std::uint64_t seed) {
  require_size(b);
  if (b.left_count() == 0) return all_red(b);
  const int delta = b.min_left_degree();
  const int r = b.rank();
  if (delta < 6 * r)
    throw Error(Errc::PreconditionRatio, "δ = " + std::to_string(delta) + " < 6r = " + std::to_string(6 * r));
  if (delta < 2) throw Error(Errc::PreconditionDelta, "min U-degree below 2");
  const double logn = log2n(static_cast<double>(b.node_count()));
  const bool randomized = mode == Mode::Randomized;

  WeakSplitResult res;
  if (delta >= 2 * logn) {
    res = randomized ? random_with_retries(b, seed, 10) : weak_split_speedup(b);
  } else {
    const int k = ceil_log2(r);
    auto red = degree_rank_reduction_2(b, 1.0 / (20.0 * delta), k, randomized);
    if (red.residual.rank() > 1 || red.residual.min_left_degree() < 2)
      throw Error(Errc::ShrinkageViolation, "after reduction: rank " + std::to_string(red.residual.rank()) +
                                                ", min U-degree " + std::to_string(red.residual.min_left_degree()));
    res.coloring = rank_one_endgame(red.residual);
    res.ledger.append(red.ledger, "drr2/");
    res.ledger.add("rank-one-finish", 1, 1.0, "1");
    res.delta_trace = std::move(red.delta_trace);
    res.rank_trace = std::move(red.rank_trace);
  }
  self_check(b, res.coloring, "weak_split_delta_ge_6r");
  return res;
}

ShatterResult finish_shatter(const BipartiteInstance& b, TwoColoring tentative) {
  if (tentative.size() != static_cast<std::size_t>(b.right_count()))
    throw Error(Errc::InvalidInput, "tentative coloring has wrong length");
  ShatterResult out;
  std::vector<char> drop(b.right_count(), 0);
  for (int u = 0; u < b.left_count(); ++u) {
    int colored = 0;
    for (int v : b.left_neighbors(u)) colored += tentative[v] != Color::Uncolored;
    if (4 * colored > 3 * b.left_degree(u))
      for (int v : b.left_neighbors(u)) drop[v] = 1;
  }
  for (int v = 0; v < b.right_count(); ++v)
    if (drop[v]) tentative[v] = Color::Uncolored;
  out.coloring = std::move(tentative);
  out.satisfied.assign(b.left_count(), 0);
  for (int u = 0; u < b.left_count(); ++u) {
    bool red = false, blue = false;
    for (int v : b.left_neighbors(u)) {
      red |= out.coloring[v] == Color::Red;
      blue |= out.coloring[v] == Color::Blue;
    }
    out.satisfied[u] = red && blue;
    if (!out.satisfied[u]) out.residual_left.push_back(u);
  }
  for (int v = 0; v < b.right_count(); ++v)
    if (out.coloring[v] == Color::Uncolored) out.residual_right.push_back(v);
  out.ledger.add("shatter-uncolor", 1, 1.0, "1");
  return out;
}

ShatterResult shatter(const BipartiteInstance& b, std::uint64_t seed) {
  TwoColoring col(b.right_count(), Color::Uncolored);
  for (int v = 0; v < b.right_count(); ++v) {
    NodeRng rng(seed, static_cast<std::uint64_t>(v), 1);
    const double x = rng.uniform();
    if (x < 0.25)
      col[v] = Color::Red;
    else if (x < 0.5)
      col[v] = Color::Blue;
  }
  RoundLedger ledger;
  ledger.add("shatter-color", 1, 1.0, "1");
  ShatterResult out = finish_shatter(b, std::move(col));
  ledger.append(out.ledger);
  out.ledger = std::move(ledger);
  return out;
}

namespace {

bool retryable(Errc c) {
  return c == Errc::ComponentTooLarge || c == Errc::PreconditionDelta || c == Errc::PreconditionSize ||
         c == Errc::GapViolation || c == Errc::RetryExhausted;
}

// Colors the shattering residual piece by piece. `check` vets a piece before
// any piece is solved; `solve` returns the piece's coloring and ledger.
template <class Check, class Solve>
void solve_residual(const BipartiteInstance& b, const ShatterResult& sh, Check&& check, Solve&& solve,
                    WeakSplitResult& res) {
  auto comps = connected_components(b, sh.residual_left, sh.residual_right);
  res.component_sizes.clear();
  for (const auto& c : comps) {
    res.component_sizes.push_back(c.instance.node_count());
    if (c.instance.left_count() > 0) check(c);
  }
  res.coloring = sh.coloring;
  RoundLedger slowest;
  for (const auto& c : comps) {
    if (c.instance.left_count() == 0) {
      for (int v : c.right_ids) res.coloring[v] = Color::Red;
      continue;
    }
    WeakSplitResult part = solve(c.instance);
    for (std::size_t i = 0; i < c.right_ids.size(); ++i) res.coloring[c.right_ids[i]] = part.coloring[i];
    if (part.ledger.total_nominal() > slowest.total_nominal()) slowest = std::move(part.ledger);
  }
  // Pieces run side by side; the slowest one sets the cost.
  res.ledger.append(slowest, "residual-max/");
}

}  // namespace

WeakSplitResult randomized_weak_split(const BipartiteInstance& b, std::uint64_t seed, const RandomizedOptions& opt) {
  require_size(b);
  if (b.left_count() == 0) return all_red(b);
  const int delta = b.min_left_degree();
  const int r = std::max(b.rank(), 1);
  const double gate = opt.c * log2n(r * log2n(static_cast<double>(b.node_count())));
  if (delta < 2 || delta < gate)
    throw Error(Errc::PreconditionDelta, "min U-degree " + std::to_string(delta) + " below gate " + std::to_string(gate));

  const SplitInstance split = split_heavy_left_nodes(b, delta);
  const BipartiteInstance& h = split.instance;
  const double logn = log2n(static_cast<double>(h.node_count()));
  const double budget = opt.budget_k * std::pow(static_cast<double>(r), 4) * std::pow(logn, 6);

  WeakSplitResult res;
  for (int a = 0; a <= opt.retry_limit; ++a) {
    const std::uint64_t s = substream(seed, static_cast<std::uint64_t>(a));
    const std::string tag = "attempt-" + std::to_string(a) + "/";
    try {
      if (delta > 2 * logn) {
        res.coloring = random_weak_split(h, s);
        res.ledger.add(tag + "random-color", 1, 1.0, "color + check");
        if (unsatisfied(h, res.coloring) > 0) throw Error(Errc::RetryExhausted, "random coloring failed");
      } else {
        ShatterResult sh = shatter(h, s);
        res.ledger.append(sh.ledger, tag);
        solve_residual(
            h, sh,
            [&](const Component& c) {
              const auto nh = c.instance.node_count();
              if (nh > budget)
                throw Error(Errc::ComponentTooLarge, std::to_string(nh) + " nodes > budget " + std::to_string(budget));
              if (c.instance.min_left_degree() < 2 * log2n(static_cast<double>(nh)))
                throw Error(Errc::PreconditionDelta, "residual piece degree below 2 log n_H");
            },
            [](const BipartiteInstance& piece) { return weak_split_speedup(piece); }, res);
      }
      res.retries = a;
      self_check(b, res.coloring, "randomized_weak_split");
      return res;
    } catch (const Error& e) {
      if (!retryable(e.code()) || a == opt.retry_limit) throw;
    }
  }
  throw Error(Errc::RetryExhausted, "unreachable");
}

ShatterResult derandomized_shatter(const BipartiteInstance& b, RoundLedger* ledger) {
  const int left = b.left_count();
  constexpr double t = 0.5;
  const double lq1 = std::log((1 + std::exp(-t)) / 2);
  const double lq2 = std::log((1 + std::exp(t)) / 2);
  const double lq3 = std::log(0.75);
  std::vector<int> colored(left, 0), red(left, 0), blue(left, 0), open(left, 0);
  for (int u = 0; u < left; ++u) open[u] = b.left_degree(u);

  // Bound on P(fewer than d/4 colored) + P(more than 3d/4 colored) + P(one color missing).
  auto term = [&](int u, int c, int rd, int bl, int m) {
    const double d = b.left_degree(u);
    double s = std::exp(t * (d / 4 - c) + m * lq1) + std::exp(t * (c - 3 * d / 4) + m * lq2);
    const double none = std::exp(m * lq3);
    if (rd == 0) s += none;
    if (bl == 0) s += none;
    return s;
  };

  auto program = [&](SLocalView<Color>& view) -> Color {
    const int x = view.center();
    double cost[3] = {0, 0, 0};  // Red, Blue, Uncolored
    for (int u : view.neighbors(x)) {
      view.require(u, 1);
      const double now = term(u, colored[u], red[u], blue[u], open[u]);
      cost[0] += term(u, colored[u] + 1, red[u] + 1, blue[u], open[u] - 1) - now;
      cost[1] += term(u, colored[u] + 1, red[u], blue[u] + 1, open[u] - 1) - now;
      cost[2] += term(u, colored[u], red[u], blue[u], open[u] - 1) - now;
    }
    int pick = 0;
    for (int i = 1; i < 3; ++i)
      if (cost[i] < cost[pick]) pick = i;
    for (int u : view.neighbors(x)) {
      --open[u];
      if (pick < 2) ++colored[u];
      if (pick == 0) ++red[u];
      if (pick == 1) ++blue[u];
    }
    return pick == 0 ? Color::Red : pick == 1 ? Color::Blue : Color::Uncolored;
  };

  const SimGraph g = b.to_graph();
  auto pc = power_graph_coloring(g, 4);
  std::vector<int> cls(b.node_count(), -1);
  for (int v = 0; v < b.right_count(); ++v) cls[left + v] = pc.color[left + v];
  auto run = slocal_to_local<Color>(program, g, 4, cls, "derandomized-shatter");

  TwoColoring tentative(b.right_count());
  for (int v = 0; v < b.right_count(); ++v) tentative[v] = run.outputs[left + v].value_or(Color::Uncolored);
  ShatterResult out = finish_shatter(b, std::move(tentative));
  RoundLedger led = pc.ledger;
  led.append(run.ledger);
  led.append(out.ledger);
  out.ledger = led;
  if (ledger) ledger->append(led);
  return out;
}

WeakSplitResult high_girth_weak_split(const BipartiteInstance& b, Mode mode, std::uint64_t seed,
                                      const HighGirthOptions& opt) {
  require_size(b);
  if (int gi = girth(b.to_graph(), 10); gi < 10)
    throw Error(Errc::GirthTooSmall, "girth " + std::to_string(gi) + " < 10");
  if (b.left_count() == 0) return all_red(b);
  const double n = static_cast<double>(b.node_count());
  const double lnn = std::log(n);
  const int delta = b.min_left_degree();
  const int big = b.max_left_degree();
  const int r = std::max(b.rank(), 1);
  const double need = mode == Mode::Deterministic ? opt.c * std::sqrt(lnn)
                                                  : opt.c * std::sqrt(std::log(static_cast<double>(big) * r * lnn));
  if (delta < need)
    throw Error(Errc::PreconditionDelta, "min U-degree " + std::to_string(delta) + " below " + std::to_string(need));
  if (big < opt.c_prime * std::log(static_cast<double>(r)))
    throw Error(Errc::PreconditionDelta, "max U-degree below c' ln r");

  auto gap = [](const Component& c) {
    if (c.instance.min_left_degree() < 6 * c.instance.rank())
      throw Error(Errc::GapViolation, "residual piece has δ_H = " + std::to_string(c.instance.min_left_degree()) +
                                          " < 6 r_H = " + std::to_string(6 * c.instance.rank()));
  };
  auto finish = [](const BipartiteInstance& piece) { return weak_split_delta_ge_6r(piece, Mode::Deterministic); };

  WeakSplitResult res;
  if (mode == Mode::Deterministic) {
    ShatterResult sh = derandomized_shatter(b, &res.ledger);
    solve_residual(b, sh, gap, finish, res);
  } else {
    for (int a = 0;; ++a) {
      try {
        ShatterResult sh = shatter(b, substream(seed, static_cast<std::uint64_t>(a)));
        res.ledger.append(sh.ledger, "attempt-" + std::to_string(a) + "/");
        solve_residual(b, sh, gap, finish, res);
        res.retries = a;
        break;
      } catch (const Error& e) {
        if (!retryable(e.code()) || a == opt.retry_limit) throw;
      }
    }
  }
  self_check(b, res.coloring, "high_girth_weak_split");
  return res;
}

}  // namespace splitsim
