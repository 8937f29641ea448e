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

// Seed selection: the stop-and-stare polling loop for each objective, the
// sandwich combination with its data-dependent ratio bound, and the
// Degree / PageRank / InfMax baselines.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "actmax/coverage.hpp"
#include "actmax/diffusion.hpp"
#include "actmax/graph.hpp"
#include "actmax/hypergraph.hpp"
#include "actmax/polling.hpp"
#include "actmax/random.hpp"
#include "actmax/stopping.hpp"

namespace actmax {

struct ObjectiveEstimates {
  std::optional<double> activity;
  std::optional<double> lower;
  std::optional<double> upper;
  std::optional<double> influence;

  std::optional<double>& operator[](Objective o) {
    switch (o) {
      case Objective::activity: return activity;
      case Objective::lower: return lower;
      case Objective::upper: return upper;
      case Objective::influence: return influence;
    }
    return activity;
  }
  const std::optional<double>& operator[](Objective o) const {
    return const_cast<ObjectiveEstimates&>(*this)[o];
  }
};

// One of the three sandwich candidates.
struct Candidate {
  std::string source;  // "upper", "lower" or "activity"
  SeedSet seeds;
  double activity_estimate = 0.0;
  bool certified = true;
};

struct SelectionReport {
  std::string algorithm;
  SeedSet seeds;
  ObjectiveEstimates estimates;
  std::uint64_t samples = 0;  // hyperedges generated, all phases
  bool certified = true;
  std::optional<double> ratio_bound;  // sandwich only
  // Set when the ratio bound exceeds 1 − 1/e − ε, which can only happen if
  // one of the γ-estimates missed its error bound.
  bool estimator_failure = false;
  std::vector<Candidate> candidates;
  double wall_time_ms = 0.0;
};

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

// Stop-and-stare selection for one objective:
//   generate ⌈Υ1⌉ hyperedges, select greedily; while D(Ŝ) < Υ1, double the
//   pool and reselect.
// Υ1 uses (ε1, δ1) from the config. Pair greedy for the activity objective
// (a heuristic), lazy max-coverage greedy for the others, which then carry
// the 1 − 1/e − ε guarantee with probability at least 1 − δ.
inline SelectionReport ssa_select(const Graph& g, Model model, Objective objective,
                                  std::size_t k, const StoppingConfig& config,
                                  StreamSet& streams) {
  detail::Stopwatch clock;
  check_budget(k, g.node_count());
  const PollingContext ctx(g, model, objective);
  SamplerPool pool(ctx, streams);
  const double threshold = upsilon1(config.epsilon1, config.delta1);

  Hypergraph h(g.node_count());
  std::uint64_t initial = static_cast<std::uint64_t>(std::ceil(threshold));
  pool.generate(std::min<std::uint64_t>(initial, config.max_samples), h);

  CoverResult result;
  bool certified = false;
  while (true) {
    const HypergraphIndex index(h);
    result = objective == Objective::activity ? greedy_pair_cover(index, k)
                                              : greedy_single_cover(index, k);
    if (static_cast<double>(result.covered) >= threshold) {
      certified = true;
      break;
    }
    if (h.size() >= config.max_samples) break;
    pool.generate(std::min<std::uint64_t>(h.size(), config.max_samples - h.size()), h);
  }

  SelectionReport report;
  report.algorithm = std::string(to_string(objective));
  report.seeds = result.seeds;
  report.estimates[objective] =
      ctx.scale() * static_cast<double>(result.covered) / static_cast<double>(h.size());
  report.samples = h.size();
  report.certified = certified;
  report.wall_time_ms = clock.elapsed_ms();
  return report;
}

// Sandwich: best of the upper-bound, lower-bound and activity selections by
// a γ-accurate activity estimate, plus the computable bound
//   ((1 − γ)² / (1 + γ)²) · (1 − 1/e − ε) · δ̂_A(S_U) / δ̂_U(S_U)
// on the approximation ratio. Each of the four estimates runs with (γ, δ/4).
inline SelectionReport sandwich_select(const Graph& g, Model model, std::size_t k,
                                       const StoppingConfig& config, StreamSet& streams) {
  detail::Stopwatch clock;
  check_budget(k, g.node_count());
  SelectionReport report;
  report.algorithm = "sandwich";

  const Objective order[] = {Objective::upper, Objective::lower, Objective::activity};
  for (Objective o : order) {
    SelectionReport part = ssa_select(g, model, o, k, config, streams);
    report.samples += part.samples;
    report.certified = report.certified && part.certified;
    report.candidates.push_back({std::string(to_string(o)), part.seeds, 0.0, part.certified});
  }

  const double est_delta = config.delta / 4.0;
  for (std::size_t i = 0; i < report.candidates.size(); ++i) {
    Candidate& c = report.candidates[i];
    const auto same = std::find_if(report.candidates.begin(), report.candidates.begin() + i,
                                   [&](const Candidate& prev) { return prev.seeds == c.seeds; });
    if (same != report.candidates.begin() + i) {
      c.activity_estimate = same->activity_estimate;
      continue;
    }
    const Estimate e = estimate_with_stopping(g, model, c.seeds, Objective::activity,
                                              config.gamma, est_delta, config.max_samples,
                                              streams);
    c.activity_estimate = e.value;
    c.certified = c.certified && e.certified;
    report.samples += e.samples;
    report.certified = report.certified && e.certified;
  }

  const Candidate& upper_pick = report.candidates[0];
  const Estimate upper_est =
      estimate_with_stopping(g, model, upper_pick.seeds, Objective::upper, config.gamma,
                             est_delta, config.max_samples, streams);
  report.samples += upper_est.samples;
  report.certified = report.certified && upper_est.certified;

  std::size_t best = 0;
  for (std::size_t i = 1; i < report.candidates.size(); ++i)
    if (report.candidates[i].activity_estimate > report.candidates[best].activity_estimate)
      best = i;
  report.seeds = report.candidates[best].seeds;
  report.estimates.activity = report.candidates[best].activity_estimate;
  report.estimates.upper = upper_est.value;

  const double shrink = std::pow((1.0 - config.gamma) / (1.0 + config.gamma), 2.0);
  const double ratio = upper_est.value > 0.0
                           ? shrink * config.alpha() * upper_pick.activity_estimate / upper_est.value
                           : 0.0;
  report.ratio_bound = ratio;
  report.estimator_failure = ratio > config.alpha();
  report.wall_time_ms = clock.elapsed_ms();
  return report;
}

// Classical influence maximization by RR-set polling (w ≡ 1).
inline SeedSet infmax_seeds(const Graph& g, Model model, std::size_t k,
                            const StoppingConfig& config, StreamSet& streams) {
  return ssa_select(g, model, Objective::influence, k, config, streams).seeds;
}

namespace detail {

// Top k by score, ties to the smaller id.
inline SeedSet top_k(const std::vector<double>& score, std::size_t k) {
  check_budget(k, score.size());
  std::vector<NodeId> order(score.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId x, NodeId y) { return score[x] > score[y]; });
  order.resize(k);
  return SeedSet(std::move(order), score.size());
}

}  // namespace detail

// Top k by total (in + out) arc count.
inline SeedSet degree_seeds(const Graph& g, std::size_t k) {
  std::vector<double> score(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v)
    score[v] = static_cast<double>(g.in_degree(v) + g.out_degree(v));
  return detail::top_k(score, k);
}

struct PageRankOptions {
  double damping = 0.85;
  double tolerance = 1e-9;
  std::size_t max_iterations = 200;
};

// Power iteration over out-arcs; dangling mass is spread uniformly. Stops
// when the L1 change drops below the tolerance.
inline std::vector<double> pagerank_scores(const Graph& g, const PageRankOptions& opt = {}) {
  check_unit_interval(opt.damping, "damping");
  const std::size_t n = g.node_count();
  if (n == 0) return {};
  std::vector<double> rank(n, 1.0 / static_cast<double>(n)), next(n);
  for (std::size_t iter = 0; iter < opt.max_iterations; ++iter) {
    double dangling = 0.0;
    for (NodeId u = 0; u < n; ++u)
      if (g.out_degree(u) == 0) dangling += rank[u];
    const double base = (1.0 - opt.damping + opt.damping * dangling) / static_cast<double>(n);
    std::fill(next.begin(), next.end(), base);
    for (NodeId u = 0; u < n; ++u) {
      const std::size_t d = g.out_degree(u);
      if (d == 0) continue;
      const double share = opt.damping * rank[u] / static_cast<double>(d);
      for (ArcId e : g.out_arcs(u)) next[g.arc(e).dst] += share;
    }
    double change = 0.0;
    for (std::size_t v = 0; v < n; ++v) change += std::abs(next[v] - rank[v]);
    rank.swap(next);
    if (change < opt.tolerance) break;
  }
  return rank;
}

inline SeedSet pagerank_seeds(const Graph& g, std::size_t k, const PageRankOptions& opt = {}) {
  return detail::top_k(pagerank_scores(g, opt), k);
}

}  // namespace actmax
