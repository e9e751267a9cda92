#pragma once

// Execution engines for LOCAL and SLOCAL node programs.
//
// LOCAL programs are classes exposing
//   using State, Message, Output;
//   State init(const NodeContext&, Step<Message, Output>&);             // round 0
//   void step(State&, const NodeContext&, int round,
//             std::span<const std::optional<Message>> inbox, Step<Message, Output>&);
// Ports are the node's incident edges in `SimGraph::incident_edges` order;
// inbox[i] holds what the neighbor on port i sent in the previous round.
//
// SLOCAL programs are callables `Output(SLocalView<Output>&)` invoked once per
// scheduled node.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "splitsim/error.hpp"
#include "splitsim/graph.hpp"
#include "splitsim/ledger.hpp"
#include "splitsim/rng.hpp"

namespace splitsim {

struct NodeContext {
  int node = 0;
  std::int64_t id = 0;
  int degree = 0;
  std::uint64_t seed = 0;

  /// Private random stream of this node for the given round.
  NodeRng rng(int round) const { return NodeRng(seed, static_cast<std::uint64_t>(id), round); }
};

template <class Message, class Output>
struct Step {
  std::vector<std::optional<Message>> outbox;  // one slot per port; empty = silent
  std::optional<Output> halt;

  void broadcast(int degree, const Message& m) { outbox.assign(degree, m); }
  void send(int degree, int port, Message m) {
    if (outbox.empty()) outbox.resize(degree);
    outbox[port] = std::move(m);
  }
};

template <class P>
concept NodeProgram = requires {
  typename P::State;
  typename P::Message;
  typename P::Output;
} && requires(P& p, typename P::State& s, const NodeContext& ctx,
              std::span<const std::optional<typename P::Message>> inbox,
              Step<typename P::Message, typename P::Output>& out) {
  { p.init(ctx, out) } -> std::convertible_to<typename P::State>;
  p.step(s, ctx, 1, inbox, out);
};

template <class Output>
struct SyncResult {
  std::vector<Output> outputs;
  int rounds = 0;
  RoundLedger ledger;
};

/// Synchronous LOCAL execution. Messages produced in round t are delivered at
/// round t+1 only (double-buffered). Throws Error{RoundLimitExceeded} if some
/// node has not halted after max_rounds rounds.
template <NodeProgram P>
SyncResult<typename P::Output> run_sync(P& program, const SimGraph& g, std::uint64_t seed, int max_rounds,
                                        std::string phase_name = "local") {
  using Message = typename P::Message;
  using Output = typename P::Output;
  if (max_rounds < 0) throw Error(Errc::InvalidInput, "max_rounds must be non-negative");
  const int n = g.node_count();

  // peer[v][port] = (neighbor, neighbor's port for the same edge)
  std::vector<std::vector<std::pair<int, int>>> peer(n);
  {
    std::vector<std::vector<std::pair<std::size_t, int>>> slot(g.edge_count());
    for (int v = 0; v < n; ++v) {
      auto inc = g.incident_edges(v);
      peer[v].resize(inc.size());
      for (std::size_t p = 0; p < inc.size(); ++p) slot[inc[p]].emplace_back(v, static_cast<int>(p));
    }
    for (const auto& s : slot) {
      // s has exactly two entries (a self-loop contributes both from one node)
      peer[s[0].first][s[0].second] = {s[1].first, s[1].second};
      peer[s[1].first][s[1].second] = {s[0].first, s[0].second};
    }
  }

  std::vector<NodeContext> ctx(n);
  for (int v = 0; v < n; ++v) ctx[v] = {v, g.id(v), g.degree(v), seed};

  std::vector<std::optional<typename P::State>> state(n);
  std::vector<std::optional<Output>> output(n);
  std::vector<std::vector<std::optional<Message>>> outbox(n), next_outbox(n);
  int halted = 0;

  for (int v = 0; v < n; ++v) {
    Step<Message, Output> st;
    state[v].emplace(program.init(ctx[v], st));
    outbox[v] = std::move(st.outbox);
    if (st.halt) {
      output[v] = std::move(st.halt);
      ++halted;
    }
  }

  int round = 0;
  std::vector<std::optional<Message>> inbox;
  while (halted < n) {
    if (round >= max_rounds)
      throw Error(Errc::RoundLimitExceeded, std::to_string(n - halted) + " nodes still running after " +
                                                std::to_string(max_rounds) + " rounds");
    ++round;
    for (int v = 0; v < n; ++v) {
      next_outbox[v].clear();
      if (output[v]) continue;
      inbox.assign(peer[v].size(), std::nullopt);
      for (std::size_t p = 0; p < peer[v].size(); ++p) {
        auto [w, wp] = peer[v][p];
        if (static_cast<std::size_t>(wp) < outbox[w].size()) inbox[p] = outbox[w][wp];
      }
      Step<Message, Output> st;
      program.step(*state[v], ctx[v], round, std::span<const std::optional<Message>>(inbox), st);
      next_outbox[v] = std::move(st.outbox);
      if (st.halt) {
        output[v] = std::move(st.halt);
        ++halted;
      }
    }
    std::swap(outbox, next_outbox);
  }

  SyncResult<Output> res;
  res.rounds = round;
  res.outputs.reserve(n);
  for (auto& o : output) res.outputs.push_back(std::move(*o));
  res.ledger.add(std::move(phase_name), round, 0.0, "executed");
  return res;
}

/// Hop distance from `from` to `to` if it is at most `limit`, else limit + 1.
int bounded_distance(const SimGraph& g, int from, int to, int limit);

/// Nodes within `radius` hops of `src` (including src), with their distances.
std::vector<std::pair<int, int>> ball(const SimGraph& g, int src, int radius);

/// Read access an SLOCAL(k) node has while it is processed. Any access beyond
/// k hops throws Error{RadiusViolation}.
template <class Output>
class SLocalView {
 public:
  SLocalView(const SimGraph& g, int center, int radius, const std::vector<std::optional<Output>>& outputs)
      : g_(&g), center_(center), radius_(radius), outputs_(&outputs) {}

  int center() const noexcept { return center_; }
  int radius() const noexcept { return radius_; }
  const SimGraph& graph() const noexcept { return *g_; }

  /// Hop distance to `node`; throws if it exceeds the radius.
  int distance(int node) const {
    int d = lookup(node);
    if (d > radius_)
      throw Error(Errc::RadiusViolation, "node " + std::to_string(node) + " is outside the " +
                                             std::to_string(radius_) + "-hop view of " + std::to_string(center_));
    return d;
  }

  /// Asserts that information stored `extra` hops behind `node` is visible,
  /// i.e. distance(node) + extra <= radius.
  void require(int node, int extra = 0) const {
    if (lookup(node) + extra > radius_)
      throw Error(Errc::RadiusViolation, "state of node " + std::to_string(node) + " (+" + std::to_string(extra) +
                                             " hops) is outside the view of " + std::to_string(center_));
  }

  /// Neighbor list of a node strictly inside the view.
  std::span<const int> neighbors(int node) const {
    require(node, 1);
    return g_->neighbors(node);
  }

  const std::optional<Output>& output(int node) const {
    require(node);
    return (*outputs_)[node];
  }

  std::int64_t id(int node) const {
    require(node);
    return g_->id(node);
  }

 private:
  int lookup(int node) const {
    if (node == center_) return 0;
    if (g_->adjacent(center_, node)) return 1;
    if (radius_ < 2) return radius_ + 1;
    auto it = cache_.find(node);
    if (it != cache_.end()) return it->second;
    int d = bounded_distance(*g_, center_, node, radius_);
    cache_.emplace(node, d);
    return d;
  }

  const SimGraph* g_;
  int center_;
  int radius_;
  const std::vector<std::optional<Output>>* outputs_;
  mutable std::unordered_map<int, int> cache_;
};

struct SLocalOrder {
  std::vector<int> sequence;
  int radius = 1;
};

/// Sequential SLOCAL execution: nodes are processed in `order.sequence`, each
/// exactly once, seeing only its radius-hop view. Unlisted nodes stay empty.
template <class Output, class Program>
  requires std::invocable<Program&, SLocalView<Output>&>
std::vector<std::optional<Output>> run_slocal(Program& program, const SimGraph& g, const SLocalOrder& order) {
  if (order.radius < 0) throw Error(Errc::InvalidInput, "negative SLOCAL radius");
  std::vector<std::optional<Output>> outputs(g.node_count());
  std::vector<char> seen(g.node_count(), 0);
  for (int v : order.sequence) {
    if (v < 0 || v >= g.node_count()) throw Error(Errc::InvalidOrder, "order entry out of range");
    if (seen[v]) throw Error(Errc::InvalidOrder, "node " + std::to_string(v) + " scheduled twice");
    seen[v] = 1;
    SLocalView<Output> view(g, v, order.radius, outputs);
    outputs[v].emplace(program(view));
  }
  return outputs;
}

struct PowerColoring {
  std::vector<int> color;
  int palette = 0;
  int power_max_degree = 0;  // Δ(g^k)
  RoundLedger ledger;
};

/// Greedy proper coloring of g^k (any two nodes within k hops differ), nodes
/// taken in index order. Palette <= Δ(g^k) + 1. Only k in {2, 4}.
PowerColoring power_graph_coloring(const SimGraph& g, int k);

/// Throws Error{InvalidScheduleColoring} if two scheduled nodes (class >= 0)
/// with the same class are within k hops.
void validate_schedule(const SimGraph& g, int k, std::span<const int> schedule_class);

template <class Output>
struct ScheduledResult {
  std::vector<std::optional<Output>> outputs;
  RoundLedger ledger;
  int phases = 0;
};

/// Runs an SLOCAL(k) program in color-class phases: class 0 first, then 1, ...
/// Nodes of one class are pairwise more than k hops apart, so their views are
/// disjoint from each other's decisions and they may decide simultaneously.
/// Nodes with class < 0 are not processed. Charged k rounds per phase.
template <class Output, class Program>
ScheduledResult<Output> slocal_to_local(Program& program, const SimGraph& g, int k,
                                        std::span<const int> schedule_class, std::string phase_name = "slocal") {
  if (static_cast<int>(schedule_class.size()) != g.node_count())
    throw Error(Errc::InvalidScheduleColoring, "schedule does not cover the graph");
  validate_schedule(g, k, schedule_class);
  std::vector<int> order;
  for (int v = 0; v < g.node_count(); ++v)
    if (schedule_class[v] >= 0) order.push_back(v);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return schedule_class[a] < schedule_class[b]; });
  int phases = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    if (i == 0 || schedule_class[order[i]] != schedule_class[order[i - 1]]) ++phases;

  ScheduledResult<Output> res;
  res.outputs = run_slocal<Output>(program, g, SLocalOrder{std::move(order), k});
  res.phases = phases;
  res.ledger.add(std::move(phase_name), static_cast<std::int64_t>(phases) * k, static_cast<double>(phases),
                 "one phase per schedule color class, k rounds each");
  return res;
}

}  // namespace splitsim
