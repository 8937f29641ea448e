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

// Directed social graph with per-arc diffusion parameter B and activity A,
// SNAP edge-list ingestion, and the parameter assignments used in the
// experiments.

#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "actmax/error.hpp"

namespace actmax {

using NodeId = std::uint32_t;
using ArcId = std::uint32_t;

enum class Orientation { directed, undirected };
enum class ActivitySetting { uniform, diffusion };

struct Arc {
  NodeId src = 0;
  NodeId dst = 0;
  double b = 0.0;  // propagation probability (IC) or influence weight (LT)
  double a = 0.0;  // activity strength
};

// Immutable after construction; safe to share between threads.
class Graph {
 public:
  Graph() = default;

  // Validates ids, rejects self-loops and duplicate (src, dst) pairs. Labels
  // are the original ids of the nodes; defaults to the identity.
  Graph(std::size_t node_count, std::vector<Arc> arcs,
        std::vector<std::uint64_t> labels = {})
      : node_count_(node_count), arcs_(std::move(arcs)), labels_(std::move(labels)) {
    if (node_count_ > std::numeric_limits<NodeId>::max() ||
        arcs_.size() > std::numeric_limits<ArcId>::max())
      throw std::invalid_argument("graph too large for 32-bit ids");
    if (labels_.empty()) {
      labels_.resize(node_count_);
      for (std::size_t v = 0; v < node_count_; ++v) labels_[v] = v;
    } else if (labels_.size() != node_count_) {
      throw std::invalid_argument("label count must equal node count");
    }

    std::unordered_set<std::uint64_t> seen;
    seen.reserve(arcs_.size() * 2);
    for (const Arc& e : arcs_) {
      if (e.src >= node_count_ || e.dst >= node_count_)
        throw std::invalid_argument("arc endpoint out of range");
      if (e.src == e.dst) throw std::invalid_argument("self-loops are not allowed");
      if (!(e.b >= 0.0 && e.b <= 1.0))
        throw std::invalid_argument("diffusion parameter must lie in [0, 1]");
      if (!(e.a >= 0.0) || !std::isfinite(e.a))
        throw std::invalid_argument("activity must be finite and non-negative");
      if (!seen.insert(pair_key(e.src, e.dst)).second)
        throw std::invalid_argument("duplicate arc");
    }
    build_adjacency();
    recompute_totals();
  }

  std::size_t node_count() const { return node_count_; }
  std::size_t arc_count() const { return arcs_.size(); }

  std::span<const Arc> arcs() const { return arcs_; }
  const Arc& arc(ArcId e) const { return arcs_[e]; }

  std::span<const ArcId> out_arcs(NodeId v) const {
    return {out_ids_.data() + out_begin_[v], out_ids_.data() + out_begin_[v + 1]};
  }
  std::span<const ArcId> in_arcs(NodeId v) const {
    return {in_ids_.data() + in_begin_[v], in_ids_.data() + in_begin_[v + 1]};
  }
  std::size_t out_degree(NodeId v) const { return out_begin_[v + 1] - out_begin_[v]; }
  std::size_t in_degree(NodeId v) const { return in_begin_[v + 1] - in_begin_[v]; }

  // T: sum of A over arcs.
  double total_activity() const { return total_activity_; }
  // w(v): half the activity of every arc incident to v, either direction.
  double node_weight(NodeId v) const { return node_weight_[v]; }
  std::span<const double> node_weights() const { return node_weight_; }
  // W: sum of w over nodes (equals T up to rounding).
  double total_weight() const { return total_weight_; }

  std::uint64_t label(NodeId v) const { return labels_[v]; }
  std::span<const std::uint64_t> labels() const { return labels_; }

  std::optional<NodeId> find_label(std::uint64_t label) const {
    if (labels_sorted_) {
      auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
      if (it != labels_.end() && *it == label)
        return static_cast<NodeId>(it - labels_.begin());
      return std::nullopt;
    }
    for (std::size_t v = 0; v < labels_.size(); ++v)
      if (labels_[v] == label) return static_cast<NodeId>(v);
    return std::nullopt;
  }

  // Same topology with new per-arc B and A values.
  Graph with_arc_values(std::span<const double> b, std::span<const double> a) const {
    if (b.size() != arcs_.size() || a.size() != arcs_.size())
      throw std::invalid_argument("one value per arc required");
    Graph g = *this;
    for (std::size_t e = 0; e < arcs_.size(); ++e) {
      if (!(b[e] >= 0.0 && b[e] <= 1.0))
        throw std::invalid_argument("diffusion parameter must lie in [0, 1]");
      if (!(a[e] >= 0.0) || !std::isfinite(a[e]))
        throw std::invalid_argument("activity must be finite and non-negative");
      g.arcs_[e].b = b[e];
      g.arcs_[e].a = a[e];
    }
    g.recompute_totals();
    return g;
  }

 private:
  static std::uint64_t pair_key(NodeId u, NodeId v) {
    return (static_cast<std::uint64_t>(u) << 32) | v;
  }

  void build_adjacency() {
    out_begin_.assign(node_count_ + 1, 0);
    in_begin_.assign(node_count_ + 1, 0);
    for (const Arc& e : arcs_) {
      ++out_begin_[e.src + 1];
      ++in_begin_[e.dst + 1];
    }
    for (std::size_t v = 0; v < node_count_; ++v) {
      out_begin_[v + 1] += out_begin_[v];
      in_begin_[v + 1] += in_begin_[v];
    }
    out_ids_.resize(arcs_.size());
    in_ids_.resize(arcs_.size());
    std::vector<std::size_t> out_fill(out_begin_.begin(), out_begin_.end() - 1);
    std::vector<std::size_t> in_fill(in_begin_.begin(), in_begin_.end() - 1);
    for (std::size_t e = 0; e < arcs_.size(); ++e) {
      out_ids_[out_fill[arcs_[e].src]++] = static_cast<ArcId>(e);
      in_ids_[in_fill[arcs_[e].dst]++] = static_cast<ArcId>(e);
    }
    labels_sorted_ = std::is_sorted(labels_.begin(), labels_.end());
  }

  void recompute_totals() {
    node_weight_.assign(node_count_, 0.0);
    total_activity_ = 0.0;
    for (const Arc& e : arcs_) {
      total_activity_ += e.a;
      node_weight_[e.src] += 0.5 * e.a;
      node_weight_[e.dst] += 0.5 * e.a;
    }
    total_weight_ = 0.0;
    for (double w : node_weight_) total_weight_ += w;
  }

  std::size_t node_count_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::uint64_t> labels_;
  bool labels_sorted_ = true;
  std::vector<std::size_t> out_begin_{0}, in_begin_{0};
  std::vector<ArcId> out_ids_, in_ids_;
  std::vector<double> node_weight_;
  double total_activity_ = 0.0;
  double total_weight_ = 0.0;
};

// Constant-time access to the in-arcs of any node (the transpose graph).
// Holds a reference; copies nothing.
class TransposeView {
 public:
  explicit TransposeView(const Graph& g) : g_(&g) {}

  std::span<const ArcId> in_arcs(NodeId v) const { return g_->in_arcs(v); }
  NodeId source(ArcId e) const { return g_->arc(e).src; }

 private:
  const Graph* g_;
};

inline TransposeView transpose_view(const Graph& g) { return TransposeView(g); }

// Ordered seed set; keeps insertion (selection) order.
class SeedSet {
 public:
  SeedSet() = default;

  SeedSet(std::vector<NodeId> nodes, std::size_t node_count) : nodes_(std::move(nodes)) {
    std::vector<NodeId> sorted = nodes_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("seed set contains duplicates");
    if (!sorted.empty() && sorted.back() >= node_count)
      throw std::invalid_argument("seed id out of range");
  }

  std::span<const NodeId> nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }
  bool contains(NodeId v) const {
    return std::find(nodes_.begin(), nodes_.end(), v) != nodes_.end();
  }

  std::vector<char> mask(std::size_t node_count) const {
    std::vector<char> m(node_count, 0);
    for (NodeId v : nodes_) m[v] = 1;
    return m;
  }

  std::vector<NodeId> sorted() const {
    std::vector<NodeId> s = nodes_;
    std::sort(s.begin(), s.end());
    return s;
  }

  friend bool operator==(const SeedSet& x, const SeedSet& y) {
    return x.sorted() == y.sorted();
  }

 private:
  std::vector<NodeId> nodes_;
};

// ---------------------------------------------------------------------------
// Edge-list ingestion

struct IngestionReport {
  std::size_t nodes = 0;
  std::size_t arcs = 0;
  std::size_t dropped_duplicates = 0;
  std::size_t dropped_self_loops = 0;
};

inline void to_json(nlohmann::json& j, const IngestionReport& r) {
  j = nlohmann::json{{"nodes", r.nodes},
                     {"arcs", r.arcs},
                     {"dropped_duplicates", r.dropped_duplicates},
                     {"dropped_self_loops", r.dropped_self_loops}};
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Splits on any whitespace and parses exactly two unsigned integers.
inline bool parse_id_pair(std::string_view line, std::uint64_t& u, std::uint64_t& v) {
  std::uint64_t* out[2] = {&u, &v};
  std::size_t fields = 0;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i == line.size()) break;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (fields == 2) return false;
    auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, *out[fields]);
    if (ec != std::errc() || ptr != line.data() + j) return false;
    ++fields;
    i = j;
  }
  return fields == 2;
}

}  // namespace detail

// Reads a SNAP-style edge list. Lines starting with '#' are comments. Node
// ids are remapped to dense [0, n) in increasing order of the original id;
// undirected input yields two arcs per edge. Duplicates and self-loops are
// dropped and counted. B and A start at 0.
inline Graph read_edge_list(std::istream& in, Orientation orientation,
                            IngestionReport* report = nullptr) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
  std::vector<std::uint64_t> ids;
  IngestionReport rep;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    std::uint64_t u = 0, v = 0;
    if (!detail::parse_id_pair(body, u, v))
      throw ParseError(line_no, "expected two non-negative integer node ids");
    ids.push_back(u);
    ids.push_back(v);
    if (u == v) {
      ++rep.dropped_self_loops;
      continue;
    }
    edges.emplace_back(u, v);
  }
  if (ids.empty()) throw Error("edge list contains no nodes");

  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  const auto dense = [&ids](std::uint64_t x) {
    return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), x) - ids.begin());
  };

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges.size() * 2);
  std::vector<Arc> arcs;
  arcs.reserve(edges.size() * (orientation == Orientation::undirected ? 2 : 1));
  for (auto [ou, ov] : edges) {
    NodeId u = dense(ou), v = dense(ov);
    std::uint64_t key;
    if (orientation == Orientation::undirected) {
      key = (static_cast<std::uint64_t>(std::min(u, v)) << 32) | std::max(u, v);
    } else {
      key = (static_cast<std::uint64_t>(u) << 32) | v;
    }
    if (!seen.insert(key).second) {
      ++rep.dropped_duplicates;
      continue;
    }
    arcs.push_back(Arc{u, v, 0.0, 0.0});
    if (orientation == Orientation::undirected) arcs.push_back(Arc{v, u, 0.0, 0.0});
  }

  const std::size_t n = ids.size();
  rep.nodes = n;
  rep.arcs = arcs.size();
  if (report) *report = rep;
  return Graph(n, std::move(arcs), std::move(ids));
}

inline Graph load_edge_list(const std::filesystem::path& path, Orientation orientation,
                            IngestionReport* report = nullptr) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open edge list: " + path.string());
  return read_edge_list(in, orientation, report);
}

// Writes every arc as "src dst" using the original ids. Reloading the
// output as a directed list reproduces the arc set.
inline void write_edge_list(const Graph& g, std::ostream& out) {
  out << "# nodes: " << g.node_count() << " arcs: " << g.arc_count() << '\n';
  for (const Arc& e : g.arcs()) out << g.label(e.src) << ' ' << g.label(e.dst) << '\n';
}

// ---------------------------------------------------------------------------
// Parameter assignment

// B(u, v) = 1 / in-degree(v), so the in-arc B values of every node sum to 1.
inline Graph assign_diffusion_params(const Graph& g) {
  std::vector<double> b(g.arc_count()), a(g.arc_count());
  for (std::size_t e = 0; e < g.arc_count(); ++e) {
    const Arc& arc = g.arc(static_cast<ArcId>(e));
    b[e] = 1.0 / static_cast<double>(g.in_degree(arc.dst));
    a[e] = arc.a;
  }
  return g.with_arc_values(b, a);
}

// B = p on every arc.
inline Graph assign_constant_diffusion(const Graph& g, double p) {
  std::vector<double> b(g.arc_count(), p), a(g.arc_count());
  for (std::size_t e = 0; e < g.arc_count(); ++e) a[e] = g.arc(static_cast<ArcId>(e)).a;
  return g.with_arc_values(b, a);
}

// uniform: A = 1; diffusion: A = B. Totals are recomputed.
inline Graph assign_activity(const Graph& g, ActivitySetting setting) {
  std::vector<double> b(g.arc_count()), a(g.arc_count());
  for (std::size_t e = 0; e < g.arc_count(); ++e) {
    b[e] = g.arc(static_cast<ArcId>(e)).b;
    a[e] = setting == ActivitySetting::uniform ? 1.0 : b[e];
  }
  return g.with_arc_values(b, a);
}

}  // namespace actmax
