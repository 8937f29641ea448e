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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "actmax/graph.hpp"

namespace actmax {

using HyperedgeId = std::uint32_t;

// One activity poll: the two reverse-reachable sets N1 (of the arc's source)
// and N2 (of its target), stored as the partition
//   n1 = N1 \ N2,  n2 = N2 \ N1,  n3 = N1 ∩ N2.
struct PairHyperedge {
  std::vector<NodeId> n1, n2, n3;
};

// One lower- or upper-bound poll: a single cover set.
struct SingleHyperedge {
  std::vector<NodeId> cover;
};

// Flat storage for a pool of hyperedges. A single-set hyperedge is kept as
// (n1, n2, n3) = (∅, ∅, cover), under which "fully covered" reduces to
// "cover intersects S".
class Hypergraph {
 public:
  explicit Hypergraph(std::size_t node_count = 0) : node_count_(node_count) {}

  std::size_t node_count() const { return node_count_; }
  std::size_t size() const { return (offsets_.size() - 1) / 3; }
  bool empty() const { return size() == 0; }
  std::size_t total_nodes() const { return nodes_.size(); }

  void add(std::span<const NodeId> n1, std::span<const NodeId> n2,
           std::span<const NodeId> n3) {
    nodes_.insert(nodes_.end(), n1.begin(), n1.end());
    offsets_.push_back(nodes_.size());
    nodes_.insert(nodes_.end(), n2.begin(), n2.end());
    offsets_.push_back(nodes_.size());
    nodes_.insert(nodes_.end(), n3.begin(), n3.end());
    offsets_.push_back(nodes_.size());
  }
  void add(const PairHyperedge& h) { add(h.n1, h.n2, h.n3); }
  void add(const SingleHyperedge& h) { add({}, {}, h.cover); }

  void append(const Hypergraph& other) {
    const std::uint64_t shift = nodes_.size();
    nodes_.insert(nodes_.end(), other.nodes_.begin(), other.nodes_.end());
    for (std::size_t i = 1; i < other.offsets_.size(); ++i)
      offsets_.push_back(other.offsets_[i] + shift);
  }

  void clear() {
    nodes_.clear();
    offsets_.assign(1, 0);
  }

  std::span<const NodeId> n1(HyperedgeId h) const { return segment(3 * h); }
  std::span<const NodeId> n2(HyperedgeId h) const { return segment(3 * h + 1); }
  std::span<const NodeId> n3(HyperedgeId h) const { return segment(3 * h + 2); }

  // S hits N1 = n1 ∪ n3 and N2 = n2 ∪ n3. `in_seed` is a per-node mask.
  bool fully_covered(HyperedgeId h, std::span<const char> in_seed) const {
    for (NodeId v : n3(h))
      if (in_seed[v]) return true;
    bool first = false, second = false;
    for (NodeId v : n1(h))
      if (in_seed[v]) {
        first = true;
        break;
      }
    if (!first) return false;
    for (NodeId v : n2(h))
      if (in_seed[v]) {
        second = true;
        break;
      }
    return second;
  }

 private:
  std::span<const NodeId> segment(std::size_t i) const {
    return {nodes_.data() + offsets_[i], nodes_.data() + offsets_[i + 1]};
  }

  std::size_t node_count_;
  std::vector<NodeId> nodes_;
  std::vector<std::uint64_t> offsets_{0};
};

}  // namespace actmax
