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

// Greedy maximum coverage over hyperedge pools.
//
// For pair hyperedges a seed set S covers h fully when it hits both
// N1 = n1 ∪ n3 and N2 = n2 ∪ n3. With the coverage sets
//   E1 = {h : only N1 hit},  E2 = {h : only N2 hit},  E3 = {h : both hit}
// (E3 is disjoint from E1 and E2) the gain of adding v is
//   MG(v) = |v.e3 \ E3| + |v.e1 ∩ E2| + |v.e2 ∩ E1|,
// which PairGreedy maintains incrementally.

#pragma once

#include <cstdint>
#include <queue>
#include <span>
#include <stdexcept>
#include <vector>

#include "actmax/graph.hpp"
#include "actmax/hypergraph.hpp"

namespace actmax {

// Inverted lists over a hyperedge pool: v.e1 / v.e2 / v.e3 hold the ids of
// hyperedges with v in n1 / n2 / n3. References the pool; keep it alive.
class HypergraphIndex {
 public:
  explicit HypergraphIndex(const Hypergraph& h) : h_(&h) {
    const std::size_t n = h.node_count();
    for (int k = 0; k < 3; ++k) begin_[k].assign(n + 1, 0);
    for (HyperedgeId i = 0; i < h.size(); ++i) {
      for (NodeId v : h.n1(i)) ++begin_[0][v + 1];
      for (NodeId v : h.n2(i)) ++begin_[1][v + 1];
      for (NodeId v : h.n3(i)) ++begin_[2][v + 1];
    }
    for (int k = 0; k < 3; ++k) {
      for (std::size_t v = 0; v < n; ++v) begin_[k][v + 1] += begin_[k][v];
      ids_[k].resize(begin_[k][n]);
    }
    std::vector<std::uint64_t> fill[3];
    for (int k = 0; k < 3; ++k) fill[k].assign(begin_[k].begin(), begin_[k].end() - 1);
    for (HyperedgeId i = 0; i < h.size(); ++i) {
      for (NodeId v : h.n1(i)) ids_[0][fill[0][v]++] = i;
      for (NodeId v : h.n2(i)) ids_[1][fill[1][v]++] = i;
      for (NodeId v : h.n3(i)) ids_[2][fill[2][v]++] = i;
    }
  }

  const Hypergraph& hypergraph() const { return *h_; }
  std::size_t node_count() const { return h_->node_count(); }
  // m_H
  std::size_t size() const { return h_->size(); }

  std::span<const HyperedgeId> e1(NodeId v) const { return list(0, v); }
  std::span<const HyperedgeId> e2(NodeId v) const { return list(1, v); }
  std::span<const HyperedgeId> e3(NodeId v) const { return list(2, v); }

 private:
  std::span<const HyperedgeId> list(int k, NodeId v) const {
    return {ids_[k].data() + begin_[k][v], ids_[k].data() + begin_[k][v + 1]};
  }

  const Hypergraph* h_;
  std::vector<std::uint64_t> begin_[3];
  std::vector<HyperedgeId> ids_[3];
};

inline std::vector<char> seed_mask(std::span<const NodeId> seeds, std::size_t node_count) {
  std::vector<char> mask(node_count, 0);
  for (NodeId v : seeds) mask[v] = 1;
  return mask;
}

// D(S): number of hyperedges fully covered by S.
inline std::size_t degree(const Hypergraph& h, std::span<const NodeId> seeds) {
  const std::vector<char> mask = seed_mask(seeds, h.node_count());
  std::size_t d = 0;
  for (HyperedgeId i = 0; i < h.size(); ++i) d += h.fully_covered(i, mask);
  return d;
}

inline std::size_t degree(const HypergraphIndex& index, const SeedSet& seeds) {
  return degree(index.hypergraph(), seeds.nodes());
}

enum class Coverage : std::uint8_t { none = 0, first = 1, second = 2, full = 3 };

// Global coverage bookkeeping for a growing seed set. Status of each
// hyperedge encodes membership in E1 (first), E2 (second) or E3 (full).
class CoverageState {
 public:
  explicit CoverageState(const HypergraphIndex& index)
      : index_(&index),
        status_(index.size(), Coverage::none),
        in_seed_(index.node_count(), 0) {}

  Coverage status(HyperedgeId h) const { return status_[h]; }
  bool in_e1(HyperedgeId h) const { return status_[h] == Coverage::first; }
  bool in_e2(HyperedgeId h) const { return status_[h] == Coverage::second; }
  bool in_e3(HyperedgeId h) const { return status_[h] == Coverage::full; }
  // D(selected) = |E3|.
  std::size_t covered() const { return covered_; }
  std::span<const NodeId> selected() const { return selected_; }
  bool is_selected(NodeId v) const { return in_seed_[v] != 0; }

  // Transition hooks receive (hyperedge, previous status, new status).
  template <class OnChange>
  void select(NodeId v, OnChange&& on_change) {
    if (in_seed_[v]) throw std::invalid_argument("node already selected");
    in_seed_[v] = 1;
    selected_.push_back(v);
    for (HyperedgeId h : index_->e3(v)) move(h, Coverage::full, on_change);
    for (HyperedgeId h : index_->e1(v)) {
      if (status_[h] == Coverage::none) move(h, Coverage::first, on_change);
      else if (status_[h] == Coverage::second) move(h, Coverage::full, on_change);
    }
    for (HyperedgeId h : index_->e2(v)) {
      if (status_[h] == Coverage::none) move(h, Coverage::second, on_change);
      else if (status_[h] == Coverage::first) move(h, Coverage::full, on_change);
    }
  }

  void select(NodeId v) {
    select(v, [](HyperedgeId, Coverage, Coverage) {});
  }

 private:
  template <class OnChange>
  void move(HyperedgeId h, Coverage to, OnChange& on_change) {
    const Coverage from = status_[h];
    if (from == to || from == Coverage::full) return;
    status_[h] = to;
    if (to == Coverage::full) ++covered_;
    on_change(h, from, to);
  }

  const HypergraphIndex* index_;
  std::vector<Coverage> status_;
  std::vector<char> in_seed_;
  std::vector<NodeId> selected_;
  std::size_t covered_ = 0;
};

// MG(v) recomputed from its definition against the current state.
inline std::int64_t marginal_gain(const CoverageState& state, const HypergraphIndex& index,
                                  NodeId v) {
  std::int64_t gain = 0;
  for (HyperedgeId h : index.e3(v)) gain += !state.in_e3(h);
  for (HyperedgeId h : index.e1(v)) gain += state.in_e2(h);
  for (HyperedgeId h : index.e2(v)) gain += state.in_e1(h);
  return gain;
}

struct CoverResult {
  SeedSet seeds;
  std::size_t covered = 0;  // D(seeds)
};

// Greedy on pair hyperedges with incremental marginal gains.
//
// When a hyperedge enters E1, nodes of its n2 gain 1; entering E2, nodes of
// n1 gain 1. When it enters E3, nodes of n3 lose 1, and so do nodes of n2
// (if it was in E1) or n1 (if it was in E2).
//
// Ties on MG go to the larger partial-coverage potential, the number of
// hyperedges whose side containing v is still unhit, then to the smaller id.
class PairGreedy {
 public:
  explicit PairGreedy(const HypergraphIndex& index)
      : index_(&index), state_(index), gain_(index.node_count()), potential_(index.node_count()) {
    for (NodeId v = 0; v < index.node_count(); ++v) {
      gain_[v] = static_cast<std::int64_t>(index.e3(v).size());
      potential_[v] = static_cast<std::int64_t>(index.e1(v).size() + index.e2(v).size());
    }
  }

  const CoverageState& state() const { return state_; }
  std::span<const std::int64_t> marginal_gains() const { return gain_; }
  std::span<const std::int64_t> potentials() const { return potential_; }

  NodeId best() const {
    NodeId best = 0;
    bool found = false;
    for (NodeId v = 0; v < index_->node_count(); ++v) {
      if (state_.is_selected(v)) continue;
      if (!found || gain_[v] > gain_[best] ||
          (gain_[v] == gain_[best] && potential_[v] > potential_[best])) {
        best = v;
        found = true;
      }
    }
    if (!found) throw std::logic_error("every node is already selected");
    return best;
  }

  void select(NodeId v) {
    const Hypergraph& h = index_->hypergraph();
    state_.select(v, [&](HyperedgeId e, Coverage from, Coverage to) {
      const bool first_was = from == Coverage::first;
      const bool second_was = from == Coverage::second;
      if (to == Coverage::first) {
        bump(h.n2(e), +1);
      } else if (to == Coverage::second) {
        bump(h.n1(e), +1);
      } else {
        bump(h.n3(e), -1);
        if (first_was) bump(h.n2(e), -1);
        if (second_was) bump(h.n1(e), -1);
      }
      // Sides hit for the first time.
      if (!first_was && (to == Coverage::first || to == Coverage::full)) drain(h.n1(e));
      if (!second_was && (to == Coverage::second || to == Coverage::full)) drain(h.n2(e));
    });
  }

  NodeId select_next() {
    const NodeId v = best();
    select(v);
    return v;
  }

 private:
  void bump(std::span<const NodeId> nodes, std::int64_t delta) {
    for (NodeId x : nodes) gain_[x] += delta;
  }
  void drain(std::span<const NodeId> nodes) {
    for (NodeId x : nodes) --potential_[x];
  }

  const HypergraphIndex* index_;
  CoverageState state_;
  std::vector<std::int64_t> gain_, potential_;
};

inline void check_budget(std::size_t k, std::size_t node_count) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (k > node_count) throw std::invalid_argument("k exceeds the number of nodes");
}

inline CoverResult greedy_pair_cover(const HypergraphIndex& index, std::size_t k) {
  check_budget(k, index.node_count());
  PairGreedy greedy(index);
  std::vector<NodeId> picked;
  for (std::size_t i = 0; i < k; ++i) picked.push_back(greedy.select_next());
  return {SeedSet(std::move(picked), index.node_count()), greedy.state().covered()};
}

// Lazy greedy maximum coverage for single-set hyperedges (stored in n3).
// Ties go to the smaller node id.
inline CoverResult greedy_single_cover(const HypergraphIndex& index, std::size_t k) {
  check_budget(k, index.node_count());
  const std::size_t n = index.node_count();
  std::vector<char> covered(index.size(), 0);
  std::vector<char> chosen(n, 0);

  struct Entry {
    std::int64_t gain;
    NodeId node;
    bool operator<(const Entry& o) const {
      return gain != o.gain ? gain < o.gain : node > o.node;
    }
  };
  std::priority_queue<Entry> heap;
  for (NodeId v = 0; v < n; ++v)
    heap.push({static_cast<std::int64_t>(index.e3(v).size()), v});

  std::vector<NodeId> picked;
  std::size_t total = 0;
  while (picked.size() < k) {
    const Entry top = heap.top();
    heap.pop();
    std::int64_t fresh = 0;
    for (HyperedgeId h : index.e3(top.node)) fresh += !covered[h];
    if (fresh < top.gain) {
      heap.push({fresh, top.node});
      continue;
    }
    chosen[top.node] = 1;
    picked.push_back(top.node);
    for (HyperedgeId h : index.e3(top.node)) {
      if (!covered[h]) {
        covered[h] = 1;
        ++total;
      }
    }
  }
  return {SeedSet(std::move(picked), n), total};
}

}  // namespace actmax
