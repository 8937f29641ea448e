// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Live-edge view of the IC and LT models: random live-edge graphs, forward
// reachability, exhaustive enumeration of outcomes for tiny graphs (the exact
// oracle), and forward Monte Carlo estimation.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "actmax/error.hpp"
#include "actmax/graph.hpp"
#include "actmax/parallel.hpp"
#include "actmax/random.hpp"

namespace actmax {

enum class Model { ic, lt };

// activity: expected A-sum over arcs with both endpoints active.
// lower: only arcs whose endpoints are both reached from one common seed.
// upper: expected w-sum over active nodes.
// influence: expected number of active nodes (upper with w = 1).
enum class Objective { activity, lower, upper, influence };

inline std::string_view to_string(Model m) { return m == Model::ic ? "ic" : "lt"; }

inline std::string_view to_string(Objective o) {
  switch (o) {
    case Objective::activity: return "activity";
    case Objective::lower: return "lower";
    case Objective::upper: return "upper";
    case Objective::influence: return "influence";
  }
  return "?";
}

inline constexpr double kLtSlack = 1e-9;

// LT live-edge sampling needs the in-arc B values of each node to sum to at
// most 1.
inline void check_lt_weights(const Graph& g) {
  for (NodeId v = 0; v < g.node_count(); ++v) {
    double sum = 0.0;
    for (ArcId e : g.in_arcs(v)) sum += g.arc(e).b;
    if (sum > 1.0 + kLtSlack)
      throw ModelError("LT model: in-arc weights of node " + std::to_string(g.label(v)) +
                       " sum to " + std::to_string(sum) + " > 1");
  }
}

// Picks the live in-arc of v under LT: arc e with probability B(e), no arc
// with the residual probability.
template <std::uniform_random_bit_generator Urbg>
std::optional<ArcId> choose_lt_in_arc(const Graph& g, NodeId v, Urbg& rng) {
  const auto in = g.in_arcs(v);
  if (in.empty()) return std::nullopt;
  const double u = uniform01(rng);
  double cumulative = 0.0;
  for (ArcId e : in) {
    cumulative += g.arc(e).b;
    if (u < cumulative) return e;
  }
  return std::nullopt;
}

class LiveEdgeGraph {
 public:
  LiveEdgeGraph() = default;
  explicit LiveEdgeGraph(std::size_t arc_count) : live_(arc_count, 0) {}

  bool live(ArcId e) const { return live_[e] != 0; }
  void set_live(ArcId e, bool value) { live_[e] = value ? 1 : 0; }
  std::size_t arc_count() const { return live_.size(); }
  std::size_t live_count() const {
    std::size_t c = 0;
    for (char x : live_) c += x != 0;
    return c;
  }

 private:
  std::vector<char> live_;
};

template <std::uniform_random_bit_generator Urbg>
LiveEdgeGraph sample_live_edge(const Graph& g, Model model, Urbg& rng) {
  LiveEdgeGraph leg(g.arc_count());
  if (model == Model::ic) {
    for (ArcId e = 0; e < g.arc_count(); ++e) leg.set_live(e, bernoulli(rng, g.arc(e).b));
  } else {
    check_lt_weights(g);
    for (NodeId v = 0; v < g.node_count(); ++v)
      if (auto e = choose_lt_in_arc(g, v, rng)) leg.set_live(*e, true);
  }
  return leg;
}

// S together with every node reachable from S over live arcs, sorted.
inline std::vector<NodeId> forward_reachable(const Graph& g, const LiveEdgeGraph& leg,
                                             const SeedSet& seeds) {
  std::vector<char> seen(g.node_count(), 0);
  std::vector<NodeId> stack, out;
  for (NodeId s : seeds.nodes()) {
    seen[s] = 1;
    stack.push_back(s);
  }
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    out.push_back(u);
    for (ArcId e : g.out_arcs(u)) {
      const NodeId v = g.arc(e).dst;
      if (leg.live(e) && !seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration

struct EnumeratedOutcome {
  LiveEdgeGraph live_edge_graph;
  double probability = 0.0;
};

inline constexpr std::uint64_t kMaxEnumeratedOutcomes = std::uint64_t{1} << 20;

// Number of live-edge outcomes with non-zero probability. Throws
// TooLargeError above kMaxEnumeratedOutcomes.
inline std::uint64_t outcome_count(const Graph& g, Model model) {
  std::uint64_t count = 1;
  if (model == Model::ic) {
    for (const Arc& e : g.arcs()) {
      if (e.b > 0.0 && e.b < 1.0) {
        count *= 2;
        if (count > kMaxEnumeratedOutcomes)
          throw TooLargeError("IC instance has more than 20 uncertain arcs");
      }
    }
  } else {
    for (NodeId v = 0; v < g.node_count(); ++v) {
      std::uint64_t choices = 0;
      double sum = 0.0;
      for (ArcId e : g.in_arcs(v)) {
        sum += g.arc(e).b;
        if (g.arc(e).b > 0.0) ++choices;
      }
      if (1.0 - sum > 1e-12 || choices == 0) ++choices;
      count *= choices;
      if (count > kMaxEnumeratedOutcomes)
        throw TooLargeError("LT instance has more than 2^20 live-edge outcomes");
    }
  }
  return count;
}

// Calls fn(const LiveEdgeGraph&, double probability) for every outcome.
template <class Fn>
void for_each_outcome(const Graph& g, Model model, Fn&& fn) {
  outcome_count(g, model);
  if (model == Model::ic) {
    LiveEdgeGraph leg(g.arc_count());
    std::vector<ArcId> uncertain;
    for (ArcId e = 0; e < g.arc_count(); ++e) {
      const double b = g.arc(e).b;
      if (b >= 1.0) leg.set_live(e, true);
      else if (b > 0.0) uncertain.push_back(e);
    }
    const std::uint64_t total = std::uint64_t{1} << uncertain.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      double p = 1.0;
      for (std::size_t i = 0; i < uncertain.size(); ++i) {
        const bool on = (mask >> i) & 1u;
        const double b = g.arc(uncertain[i]).b;
        leg.set_live(uncertain[i], on);
        p *= on ? b : 1.0 - b;
      }
      fn(static_cast<const LiveEdgeGraph&>(leg), p);
    }
    return;
  }

  check_lt_weights(g);
  struct Choice {
    std::optional<ArcId> arc;
    double p;
  };
  std::vector<std::vector<Choice>> options(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    double sum = 0.0;
    for (ArcId e : g.in_arcs(v)) {
      const double b = g.arc(e).b;
      sum += b;
      if (b > 0.0) options[v].push_back({e, b});
    }
    const double rest = 1.0 - sum;
    if (rest > 1e-12 || options[v].empty()) options[v].push_back({std::nullopt, std::max(rest, 0.0)});
  }
  std::vector<std::size_t> digit(g.node_count(), 0);
  LiveEdgeGraph leg(g.arc_count());
  while (true) {
    double p = 1.0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      const Choice& c = options[v][digit[v]];
      p *= c.p;
      for (const Choice& other : options[v])
        if (other.arc) leg.set_live(*other.arc, false);
      if (c.arc) leg.set_live(*c.arc, true);
    }
    fn(static_cast<const LiveEdgeGraph&>(leg), p);
    std::size_t v = 0;
    while (v < digit.size() && ++digit[v] == options[v].size()) digit[v++] = 0;
    if (v == digit.size()) break;
  }
}

inline std::vector<EnumeratedOutcome> enumerate_outcomes(const Graph& g, Model model) {
  std::vector<EnumeratedOutcome> out;
  for_each_outcome(g, model, [&](const LiveEdgeGraph& leg, double p) {
    out.push_back({leg, p});
  });
  return out;
}

namespace detail {

inline double realized_value(const Graph& g, const LiveEdgeGraph& leg,
                             const SeedSet& seeds, Objective objective) {
  switch (objective) {
    case Objective::activity: {
      std::vector<char> active(g.node_count(), 0);
      for (NodeId v : forward_reachable(g, leg, seeds)) active[v] = 1;
      double sum = 0.0;
      for (const Arc& e : g.arcs())
        if (active[e.src] && active[e.dst]) sum += e.a;
      return sum;
    }
    case Objective::lower: {
      std::vector<char> counted(g.arc_count(), 0);
      std::vector<char> active(g.node_count());
      double sum = 0.0;
      for (NodeId x : seeds.nodes()) {
        std::fill(active.begin(), active.end(), 0);
        for (NodeId v : forward_reachable(g, leg, SeedSet({x}, g.node_count()))) active[v] = 1;
        for (ArcId e = 0; e < g.arc_count(); ++e) {
          const Arc& arc = g.arc(e);
          if (!counted[e] && active[arc.src] && active[arc.dst]) {
            counted[e] = 1;
            sum += arc.a;
          }
        }
      }
      return sum;
    }
    case Objective::upper: {
      double sum = 0.0;
      for (NodeId v : forward_reachable(g, leg, seeds)) sum += g.node_weight(v);
      return sum;
    }
    case Objective::influence:
      return static_cast<double>(forward_reachable(g, leg, seeds).size());
  }
  return 0.0;
}

}  // namespace detail

// Exact expectation of the objective by summing over every live-edge outcome.
// Desk-scale only: refuses instances with more than 2^20 outcomes.
inline double exact_objective(const Graph& g, Model model, const SeedSet& seeds,
                              Objective objective) {
  double total = 0.0;
  for_each_outcome(g, model, [&](const LiveEdgeGraph& leg, double p) {
    total += p * detail::realized_value(g, leg, seeds, objective);
  });
  return total;
}

// Exact oracle that answers many seed-set queries on one small instance. It
// stores, for every outcome, the forward-reachable set of each node as a
// bitset; a query then only ORs bitsets.
class ExactOracle {
 public:
  static constexpr std::size_t kMaxStoredWords = std::size_t{1} << 25;

  ExactOracle(const Graph& g, Model model) : g_(&g) {
    words_ = (g.node_count() + 63) / 64;
    const std::uint64_t outcomes = actmax::outcome_count(g, model);
    if (outcomes * g.node_count() * words_ > kMaxStoredWords)
      throw TooLargeError("exact oracle cache would be too large");
    probability_.reserve(outcomes);
    reach_.reserve(outcomes * g.node_count() * words_);
    for_each_outcome(g, model, [&](const LiveEdgeGraph& leg, double p) {
      probability_.push_back(p);
      for (NodeId v = 0; v < g.node_count(); ++v) {
        const std::size_t base = reach_.size();
        reach_.resize(base + words_, 0);
        for (NodeId r : forward_reachable(g, leg, SeedSet({v}, g.node_count())))
          reach_[base + r / 64] |= std::uint64_t{1} << (r % 64);
      }
    });
  }

  std::size_t outcome_count() const { return probability_.size(); }
  double probability(std::size_t outcome) const { return probability_[outcome]; }

  double value(const SeedSet& seeds, Objective objective) const {
    const Graph& g = *g_;
    std::vector<std::uint64_t> active(words_);
    double total = 0.0;
    for (std::size_t o = 0; o < probability_.size(); ++o) {
      double realized = 0.0;
      if (objective == Objective::lower) {
        for (const Arc& e : g.arcs()) {
          for (NodeId x : seeds.nodes()) {
            const std::uint64_t* r = reach(o, x);
            if (test(r, e.src) && test(r, e.dst)) {
              realized += e.a;
              break;
            }
          }
        }
      } else {
        std::fill(active.begin(), active.end(), 0);
        for (NodeId x : seeds.nodes()) {
          const std::uint64_t* r = reach(o, x);
          for (std::size_t w = 0; w < words_; ++w) active[w] |= r[w];
        }
        if (objective == Objective::activity) {
          for (const Arc& e : g.arcs())
            if (test(active.data(), e.src) && test(active.data(), e.dst)) realized += e.a;
        } else if (objective == Objective::upper) {
          for (NodeId v = 0; v < g.node_count(); ++v)
            if (test(active.data(), v)) realized += g.node_weight(v);
        } else {
          for (std::uint64_t w : active) realized += std::popcount(w);
        }
      }
      total += probability_[o] * realized;
    }
    return total;
  }

 private:
  const std::uint64_t* reach(std::size_t outcome, NodeId v) const {
    return reach_.data() + (outcome * g_->node_count() + v) * words_;
  }
  static bool test(const std::uint64_t* bits, NodeId v) {
    return (bits[v / 64] >> (v % 64)) & 1u;
  }

  const Graph* g_;
  std::size_t words_ = 1;
  std::vector<double> probability_;
  std::vector<std::uint64_t> reach_;
};

// ---------------------------------------------------------------------------
// Forward Monte Carlo

struct ForwardOutcome {
  double inside_activity = 0.0;  // A-sum over arcs with both endpoints active
  std::size_t inside_arcs = 0;   // arcs with both endpoints active
  std::size_t touched_arcs = 0;  // arcs with at least one active endpoint
  std::size_t active_nodes = 0;
};

// One diffusion run from a seed set, deciding live arcs lazily. Reusable
// across runs without reallocation.
class ForwardSimulator {
 public:
  ForwardSimulator(const Graph& g, Model model) : g_(&g), model_(model) {
    if (model == Model::lt) check_lt_weights(g);
    active_epoch_.assign(g.node_count(), 0);
    choice_epoch_.assign(g.node_count(), 0);
    choice_.assign(g.node_count(), kNoArc);
  }

  template <std::uniform_random_bit_generator Urbg>
  ForwardOutcome run(const SeedSet& seeds, Urbg& rng) {
    const Graph& g = *g_;
    next_epoch();
    active_.clear();
    for (NodeId s : seeds.nodes()) {
      if (active_epoch_[s] != epoch_) {
        active_epoch_[s] = epoch_;
        active_.push_back(s);
      }
    }
    for (std::size_t head = 0; head < active_.size(); ++head) {
      const NodeId u = active_[head];
      for (ArcId e : g.out_arcs(u)) {
        const NodeId v = g.arc(e).dst;
        if (active_epoch_[v] == epoch_) continue;
        // IC: every arc is examined at most once because its source is
        // expanded once. LT: the target's live in-arc is fixed on first touch.
        const bool live = model_ == Model::ic ? bernoulli(rng, g.arc(e).b)
                                              : lt_choice(v, rng) == e;
        if (live) {
          active_epoch_[v] = epoch_;
          active_.push_back(v);
        }
      }
    }

    ForwardOutcome out;
    out.active_nodes = active_.size();
    std::size_t incident = 0;
    for (NodeId u : active_) {
      incident += g.out_degree(u) + g.in_degree(u);
      for (ArcId e : g.out_arcs(u)) {
        if (active_epoch_[g.arc(e).dst] == epoch_) {
          out.inside_activity += g.arc(e).a;
          ++out.inside_arcs;
        }
      }
    }
    out.touched_arcs = incident - out.inside_arcs;
    return out;
  }

 private:
  static constexpr ArcId kNoArc = std::numeric_limits<ArcId>::max();

  void next_epoch() {
    if (++epoch_ == 0) {
      std::fill(active_epoch_.begin(), active_epoch_.end(), 0);
      std::fill(choice_epoch_.begin(), choice_epoch_.end(), 0);
      epoch_ = 1;
    }
  }

  template <std::uniform_random_bit_generator Urbg>
  ArcId lt_choice(NodeId v, Urbg& rng) {
    if (choice_epoch_[v] != epoch_) {
      choice_epoch_[v] = epoch_;
      auto e = choose_lt_in_arc(*g_, v, rng);
      choice_[v] = e ? *e : kNoArc;
    }
    return choice_[v];
  }

  const Graph* g_;
  Model model_;
  std::uint32_t epoch_ = 0;
  std::vector<std::uint32_t> active_epoch_, choice_epoch_;
  std::vector<ArcId> choice_;
  std::vector<NodeId> active_;
};

// Mean realized in-subgraph activity over `trials` forward simulations.
template <std::uniform_random_bit_generator Urbg>
double mc_forward_estimate(const Graph& g, Model model, const SeedSet& seeds,
                           std::size_t trials, Urbg& rng) {
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  if (seeds.empty()) return 0.0;
  ForwardSimulator sim(g, model);
  double sum = 0.0;
  for (std::size_t t = 0; t < trials; ++t) sum += sim.run(seeds, rng).inside_activity;
  return sum / static_cast<double>(trials);
}

struct ForwardStats {
  std::size_t trials = 0;
  double mean_inside_activity = 0.0;
  double mean_inside_arcs = 0.0;
  double mean_touched_arcs = 0.0;
  double mean_active_nodes = 0.0;

  // Arcs with both endpoints active over arcs with at least one, as a ratio
  // of means.
  double interaction_ratio() const {
    return mean_touched_arcs > 0.0 ? mean_inside_arcs / mean_touched_arcs : 0.0;
  }
};

// Forward simulation split across the streams of `streams`, one worker each.
inline ForwardStats forward_statistics(const Graph& g, Model model, const SeedSet& seeds,
                                       std::size_t trials, StreamSet& streams) {
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  const std::size_t workers = streams.size();
  std::vector<ForwardStats> partial(workers);
  run_workers(workers, [&](std::size_t w) {
    ForwardSimulator sim(g, model);
    const Chunk c = chunk_of(trials, workers, w);
    ForwardStats& s = partial[w];
    for (std::size_t t = c.begin; t < c.end; ++t) {
      const ForwardOutcome o = sim.run(seeds, streams[w]);
      s.mean_inside_activity += o.inside_activity;
      s.mean_inside_arcs += static_cast<double>(o.inside_arcs);
      s.mean_touched_arcs += static_cast<double>(o.touched_arcs);
      s.mean_active_nodes += static_cast<double>(o.active_nodes);
    }
  });
  ForwardStats total;
  total.trials = trials;
  for (const ForwardStats& s : partial) {
    total.mean_inside_activity += s.mean_inside_activity;
    total.mean_inside_arcs += s.mean_inside_arcs;
    total.mean_touched_arcs += s.mean_touched_arcs;
    total.mean_active_nodes += s.mean_active_nodes;
  }
  const double n = static_cast<double>(trials);
  total.mean_inside_activity /= n;
  total.mean_inside_arcs /= n;
  total.mean_touched_arcs /= n;
  total.mean_active_nodes /= n;
  return total;
}

}  // namespace actmax
