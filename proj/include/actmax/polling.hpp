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

// Hyperedge generation by reverse-reachable polling.
//
// Activity polls pick an arc (u, v) with probability A(u,v)/T and compute the
// reverse-reachable sets of u and v in one shared random live-edge graph. The
// live-edge graph is never materialized: arc (IC) and in-arc choice (LT)
// states are drawn on first touch and cached for the rest of the poll, so
// both traversals see the same world.
//
// Estimators, for a fixed seed set S and pool size m:
//   activity  T * |{h : S hits both N1 and N2}| / m
//   lower     T * |{h : S hits N1 ∩ N2}| / m
//   upper     W * |{h : S hits RR(v)}| / m,  v ~ w(v)/W
//   influence n * |{h : S hits RR(v)}| / m,  v uniform

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "actmax/alias_table.hpp"
#include "actmax/diffusion.hpp"
#include "actmax/error.hpp"
#include "actmax/graph.hpp"
#include "actmax/hypergraph.hpp"
#include "actmax/parallel.hpp"
#include "actmax/random.hpp"

namespace actmax {

// Per-poll memo of random edge states. Reset is O(1) (epoch stamp); arrays
// are dense over arcs (IC) or nodes (LT).
class EdgeStateCache {
 public:
  EdgeStateCache(const Graph& g, Model model) : g_(&g), model_(model) {
    if (model == Model::ic) {
      arc_epoch_.assign(g.arc_count(), 0);
      arc_live_.assign(g.arc_count(), 0);
    } else {
      node_epoch_.assign(g.node_count(), 0);
      node_choice_.assign(g.node_count(), kNone);
    }
  }

  Model model() const { return model_; }

  void reset() {
    touched_ = 0;
    if (++epoch_ == 0) {
      std::fill(arc_epoch_.begin(), arc_epoch_.end(), 0);
      std::fill(node_epoch_.begin(), node_epoch_.end(), 0);
      epoch_ = 1;
    }
  }

  // IC: arc e is live with probability B(e), drawn once per poll. LT: e is
  // live iff it is the chosen in-arc of its head.
  template <std::uniform_random_bit_generator Urbg>
  bool arc_live(ArcId e, Urbg& rng) {
    if (model_ == Model::lt) return live_in_arc(g_->arc(e).dst, rng) == e;
    if (arc_epoch_[e] != epoch_) {
      arc_epoch_[e] = epoch_;
      arc_live_[e] = bernoulli(rng, g_->arc(e).b) ? 1 : 0;
      ++touched_;
    }
    return arc_live_[e] != 0;
  }

  // LT: the single live in-arc of v (or none), drawn once per poll.
  template <std::uniform_random_bit_generator Urbg>
  std::optional<ArcId> live_in_arc(NodeId v, Urbg& rng) {
    if (node_epoch_[v] != epoch_) {
      node_epoch_[v] = epoch_;
      auto e = choose_lt_in_arc(*g_, v, rng);
      node_choice_[v] = e ? *e : kNone;
      ++touched_;
    }
    if (node_choice_[v] == kNone) return std::nullopt;
    return node_choice_[v];
  }

  // Cached state without drawing; nullopt while undetermined.
  std::optional<bool> arc_state(ArcId e) const {
    if (model_ == Model::ic) {
      if (arc_epoch_[e] != epoch_) return std::nullopt;
      return arc_live_[e] != 0;
    }
    const NodeId v = g_->arc(e).dst;
    if (node_epoch_[v] != epoch_) return std::nullopt;
    return node_choice_[v] == e;
  }

  // Number of arcs (IC) or nodes (LT) decided since the last reset.
  std::size_t touched() const { return touched_; }

 private:
  static constexpr ArcId kNone = std::numeric_limits<ArcId>::max();

  const Graph* g_;
  Model model_;
  std::uint32_t epoch_ = 1;
  std::size_t touched_ = 0;
  std::vector<std::uint32_t> arc_epoch_;
  std::vector<char> arc_live_;
  std::vector<std::uint32_t> node_epoch_;
  std::vector<ArcId> node_choice_;
};

// Reverse BFS over live arcs with an epoch-stamped visited set.
class ReverseTraversal {
 public:
  explicit ReverseTraversal(const Graph& g) : g_(&g), mark_(g.node_count(), 0) {}

  // Fills `out` with every node that reaches `target` over live arcs,
  // target included, in BFS order. Visited nodes stay marked until the next
  // run.
  template <std::uniform_random_bit_generator Urbg>
  void run(NodeId target, EdgeStateCache& cache, Urbg& rng, std::vector<NodeId>& out) {
    if (++epoch_ == 0) {
      std::fill(mark_.begin(), mark_.end(), 0);
      epoch_ = 1;
    }
    const Graph& g = *g_;
    out.clear();
    out.push_back(target);
    mark_[target] = epoch_;
    for (std::size_t head = 0; head < out.size(); ++head) {
      const NodeId x = out[head];
      if (cache.model() == Model::ic) {
        for (ArcId e : g.in_arcs(x)) {
          const NodeId u = g.arc(e).src;
          if (mark_[u] == epoch_) continue;
          if (cache.arc_live(e, rng)) {
            mark_[u] = epoch_;
            out.push_back(u);
          }
        }
      } else if (auto e = cache.live_in_arc(x, rng)) {
        const NodeId u = g.arc(*e).src;
        if (mark_[u] != epoch_) {
          mark_[u] = epoch_;
          out.push_back(u);
        }
      }
    }
  }

  bool visited(NodeId v) const { return mark_[v] == epoch_; }

 private:
  const Graph* g_;
  std::uint32_t epoch_ = 0;
  std::vector<std::uint32_t> mark_;
};

// Sorted reverse-reachable set of `target` under the states in `cache`.
template <std::uniform_random_bit_generator Urbg>
std::vector<NodeId> reverse_reachable(const Graph& g, NodeId target, EdgeStateCache& cache,
                                      Urbg& rng) {
  ReverseTraversal traversal(g);
  std::vector<NodeId> out;
  traversal.run(target, cache, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

// Immutable sampling tables for one objective; shared by all workers.
class PollingContext {
 public:
  PollingContext(const Graph& g, Model model, Objective objective)
      : g_(&g), model_(model), objective_(objective) {
    if (model == Model::lt) check_lt_weights(g);
    switch (objective) {
      case Objective::activity:
      case Objective::lower: {
        if (!(g.total_activity() > 0.0))
          throw DegenerateWeightsError("total activity T is zero");
        std::vector<double> a(g.arc_count());
        for (std::size_t e = 0; e < a.size(); ++e) a[e] = g.arc(static_cast<ArcId>(e)).a;
        arcs_ = AliasTable(a);
        scale_ = g.total_activity();
        break;
      }
      case Objective::upper:
        if (!(g.total_weight() > 0.0))
          throw DegenerateWeightsError("total node weight W is zero");
        nodes_ = AliasTable(g.node_weights());
        scale_ = g.total_weight();
        break;
      case Objective::influence: {
        if (g.node_count() == 0) throw DegenerateWeightsError("graph has no nodes");
        std::vector<double> ones(g.node_count(), 1.0);
        nodes_ = AliasTable(ones);
        scale_ = static_cast<double>(g.node_count());
        break;
      }
    }
  }

  const Graph& graph() const { return *g_; }
  Model model() const { return model_; }
  Objective objective() const { return objective_; }
  // Multiplier turning a coverage fraction into an objective estimate.
  double scale() const { return scale_; }

  template <std::uniform_random_bit_generator Urbg>
  ArcId sample_arc(Urbg& rng) const {
    return static_cast<ArcId>(arcs_.sample(rng));
  }
  template <std::uniform_random_bit_generator Urbg>
  NodeId sample_node(Urbg& rng) const {
    return static_cast<NodeId>(nodes_.sample(rng));
  }

 private:
  const Graph* g_;
  Model model_;
  Objective objective_;
  AliasTable arcs_, nodes_;
  double scale_ = 0.0;
};

// Raw result of one activity poll, retaining N1 and N2 for checks.
struct PairPoll {
  ArcId arc = 0;
  std::vector<NodeId> first;   // N1 = RR(source)
  std::vector<NodeId> second;  // N2 = RR(target)
  PairHyperedge hyperedge;
};

// Per-worker hyperedge generator. Owns its cache and scratch buffers.
class HyperedgeSampler {
 public:
  explicit HyperedgeSampler(const PollingContext& ctx)
      : ctx_(&ctx),
        cache_(ctx.graph(), ctx.model()),
        first_(ctx.graph()),
        second_(ctx.graph()) {}

  const PollingContext& context() const { return *ctx_; }
  const EdgeStateCache& cache() const { return cache_; }

  template <std::uniform_random_bit_generator Urbg>
  PairPoll poll_pair(Urbg& rng) {
    PairPoll p;
    p.arc = ctx_->sample_arc(rng);
    run_pair(p.arc, rng);
    p.first = buf1_;
    p.second = buf2_;
    p.hyperedge = {n1_, n2_, n3_};
    return p;
  }

  // Appends one hyperedge of the context's kind to `out`.
  template <std::uniform_random_bit_generator Urbg>
  void sample_into(Urbg& rng, Hypergraph& out) {
    draw(rng);
    out.add(n1_, n2_, n3_);
  }

  // Draws one hyperedge and reports whether the seed mask fully covers it.
  template <std::uniform_random_bit_generator Urbg>
  bool sample_covered(Urbg& rng, std::span<const char> in_seed) {
    draw(rng);
    for (NodeId v : n3_)
      if (in_seed[v]) return true;
    const auto hits = [&](const std::vector<NodeId>& s) {
      return std::any_of(s.begin(), s.end(), [&](NodeId v) { return in_seed[v] != 0; });
    };
    return hits(n1_) && hits(n2_);
  }

  // Last drawn partition.
  const std::vector<NodeId>& n1() const { return n1_; }
  const std::vector<NodeId>& n2() const { return n2_; }
  const std::vector<NodeId>& n3() const { return n3_; }

 private:
  template <std::uniform_random_bit_generator Urbg>
  void draw(Urbg& rng) {
    n1_.clear();
    n2_.clear();
    n3_.clear();
    if (ctx_->objective() == Objective::activity || ctx_->objective() == Objective::lower) {
      run_pair(ctx_->sample_arc(rng), rng);
    } else {
      cache_.reset();
      first_.run(ctx_->sample_node(rng), cache_, rng, n3_);
    }
  }

  template <std::uniform_random_bit_generator Urbg>
  void run_pair(ArcId arc, Urbg& rng) {
    const Arc& e = ctx_->graph().arc(arc);
    cache_.reset();
    first_.run(e.src, cache_, rng, buf1_);
    second_.run(e.dst, cache_, rng, buf2_);
    n1_.clear();
    n2_.clear();
    n3_.clear();
    const bool lower_only = ctx_->objective() == Objective::lower;
    for (NodeId x : buf1_) {
      if (second_.visited(x)) n3_.push_back(x);
      else if (!lower_only) n1_.push_back(x);
    }
    if (!lower_only)
      for (NodeId x : buf2_)
        if (!first_.visited(x)) n2_.push_back(x);
  }

  const PollingContext* ctx_;
  EdgeStateCache cache_;
  ReverseTraversal first_, second_;
  std::vector<NodeId> buf1_, buf2_, n1_, n2_, n3_;
};

// One-off convenience draws. Each builds its sampling tables; use a
// PollingContext and HyperedgeSampler for bulk generation.
template <std::uniform_random_bit_generator Urbg>
ArcId sample_activity_arc(const Graph& g, Urbg& rng) {
  std::vector<double> a(g.arc_count());
  for (std::size_t e = 0; e < a.size(); ++e) a[e] = g.arc(static_cast<ArcId>(e)).a;
  if (a.empty() || !(g.total_activity() > 0.0))
    throw DegenerateWeightsError("total activity T is zero");
  return static_cast<ArcId>(AliasTable(a).sample(rng));
}

template <std::uniform_random_bit_generator Urbg>
PairHyperedge generate_pair_hyperedge(const Graph& g, Model model, Urbg& rng) {
  PollingContext ctx(g, model, Objective::activity);
  HyperedgeSampler sampler(ctx);
  return sampler.poll_pair(rng).hyperedge;
}

template <std::uniform_random_bit_generator Urbg>
SingleHyperedge generate_lower_hyperedge(const Graph& g, Model model, Urbg& rng) {
  PollingContext ctx(g, model, Objective::lower);
  HyperedgeSampler sampler(ctx);
  Hypergraph h(g.node_count());
  sampler.sample_into(rng, h);
  return {std::vector<NodeId>(h.n3(0).begin(), h.n3(0).end())};
}

template <std::uniform_random_bit_generator Urbg>
SingleHyperedge generate_upper_hyperedge(const Graph& g, Model model, Urbg& rng) {
  PollingContext ctx(g, model, Objective::upper);
  HyperedgeSampler sampler(ctx);
  Hypergraph h(g.node_count());
  sampler.sample_into(rng, h);
  return {std::vector<NodeId>(h.n3(0).begin(), h.n3(0).end())};
}

// Parallel generation: worker w owns stream w and its own sampler. Output is
// concatenated in worker order, so a fixed (seed, worker count) reproduces
// the same pool.
class SamplerPool {
 public:
  SamplerPool(const PollingContext& ctx, StreamSet& streams) : streams_(&streams) {
    samplers_.reserve(streams.size());
    for (std::size_t w = 0; w < streams.size(); ++w) samplers_.emplace_back(ctx);
  }

  std::size_t workers() const { return samplers_.size(); }

  void generate(std::size_t count, Hypergraph& out) {
    if (workers() == 1) {
      for (std::size_t i = 0; i < count; ++i) samplers_[0].sample_into((*streams_)[0], out);
      return;
    }
    std::vector<Hypergraph> parts(workers(), Hypergraph(out.node_count()));
    run_workers(workers(), [&](std::size_t w) {
      const Chunk c = chunk_of(count, workers(), w);
      for (std::size_t i = c.begin; i < c.end; ++i)
        samplers_[w].sample_into((*streams_)[w], parts[w]);
    });
    for (const Hypergraph& p : parts) out.append(p);
  }

  // Coverage outcome of `count` fresh hyperedges, in generation order.
  std::vector<char> coverage_flags(std::size_t count, std::span<const char> in_seed) {
    std::vector<char> flags(count, 0);
    run_workers(workers(), [&](std::size_t w) {
      const Chunk c = chunk_of(count, workers(), w);
      for (std::size_t i = c.begin; i < c.end; ++i)
        flags[i] = samplers_[w].sample_covered((*streams_)[w], in_seed) ? 1 : 0;
    });
    return flags;
  }

 private:
  StreamSet* streams_;
  std::vector<HyperedgeSampler> samplers_;
};

// Debug dump: one object per hyperedge with original node ids.
inline nlohmann::json hyperedges_to_json(const Hypergraph& h, const Graph& g) {
  nlohmann::json out = nlohmann::json::array();
  const auto labels = [&](std::span<const NodeId> s) {
    nlohmann::json a = nlohmann::json::array();
    for (NodeId v : s) a.push_back(g.label(v));
    return a;
  };
  for (HyperedgeId i = 0; i < h.size(); ++i)
    out.push_back({{"n1", labels(h.n1(i))}, {"n2", labels(h.n2(i))}, {"n3", labels(h.n3(i))}});
  return out;
}

}  // namespace actmax
