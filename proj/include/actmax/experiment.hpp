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

// Experiment harness: run an algorithm by name, evaluate its seeds, and
// tabulate comparative gain ratios against the sandwich selection.

#pragma once

#include <array>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "actmax/diffusion.hpp"
#include "actmax/graph.hpp"
#include "actmax/random.hpp"
#include "actmax/selector.hpp"
#include "actmax/stopping.hpp"

namespace actmax {

inline constexpr std::array<std::string_view, 7> kAlgorithms = {
    "sandwich", "activity-greedy", "lower", "upper", "infmax", "degree", "pagerank"};

inline bool is_algorithm(std::string_view name) {
  for (auto a : kAlgorithms)
    if (a == name) return true;
  return false;
}

inline std::string_view to_string(ActivitySetting s) {
  return s == ActivitySetting::uniform ? "uniform" : "diffusion";
}

// Loads an edge list and assigns B (1/in-degree, or the constant
// `edge_prob`) and then A according to `activity`.
inline Graph load_instance(const std::filesystem::path& path, Orientation orientation,
                           ActivitySetting activity, std::optional<double> edge_prob = {},
                           IngestionReport* report = nullptr) {
  const Graph raw = load_edge_list(path, orientation, report);
  const Graph with_b =
      edge_prob ? assign_constant_diffusion(raw, *edge_prob) : assign_diffusion_params(raw);
  return assign_activity(with_b, activity);
}

// Runs one selection algorithm. Degree and PageRank report no estimates.
inline SelectionReport run_algorithm(const Graph& g, Model model, std::string_view name,
                                     std::size_t k, const StoppingConfig& config,
                                     StreamSet& streams, const PageRankOptions& pagerank = {}) {
  SelectionReport r;
  if (name == "sandwich") {
    r = sandwich_select(g, model, k, config, streams);
  } else if (name == "activity-greedy") {
    r = ssa_select(g, model, Objective::activity, k, config, streams);
  } else if (name == "lower") {
    r = ssa_select(g, model, Objective::lower, k, config, streams);
  } else if (name == "upper") {
    r = ssa_select(g, model, Objective::upper, k, config, streams);
  } else if (name == "infmax") {
    r = ssa_select(g, model, Objective::influence, k, config, streams);
  } else if (name == "degree") {
    detail::Stopwatch clock;
    r.seeds = degree_seeds(g, k);
    r.wall_time_ms = clock.elapsed_ms();
  } else if (name == "pagerank") {
    detail::Stopwatch clock;
    r.seeds = pagerank_seeds(g, k, pagerank);
    r.wall_time_ms = clock.elapsed_ms();
  } else {
    throw std::invalid_argument("unknown algorithm: " + std::string(name));
  }
  r.algorithm = std::string(name);
  return r;
}

// (δ̂_A(S_alg) − δ̂_A(S_sandwich)) / δ̂_A(S_sandwich)
inline double gain_ratio(double activity_alg, double activity_sandwich) {
  if (activity_sandwich == 0.0) return 0.0;
  return (activity_alg - activity_sandwich) / activity_sandwich;
}

struct ExperimentRow {
  std::string dataset;
  std::string model;
  std::string activity_setting;
  std::size_t k = 0;
  std::string algorithm;
  double activity_estimate = 0.0;
  double gain_ratio = 0.0;
  std::optional<double> ratio_bound;
  std::uint64_t samples = 0;
  double runtime_ms = 0.0;
  std::uint64_t rng_seed = 0;

  friend bool operator==(const ExperimentRow&, const ExperimentRow&) = default;
};

inline constexpr std::string_view kCsvHeader =
    "dataset,model,activity_setting,k,algorithm,activity_estimate,gain_ratio,ratio_bound,"
    "samples,runtime_ms,rng_seed";

namespace detail {

// Shortest representation that parses back to the same double.
inline std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

template <class T>
T parse_field(std::string_view s) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("bad CSV field: " + std::string(s));
  return value;
}

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace detail

inline std::string to_csv(const ExperimentRow& r) {
  std::string out;
  out += r.dataset + ',' + r.model + ',' + r.activity_setting + ',' + std::to_string(r.k) + ',' +
         r.algorithm + ',' + detail::format_double(r.activity_estimate) + ',' +
         detail::format_double(r.gain_ratio) + ',' +
         (r.ratio_bound ? detail::format_double(*r.ratio_bound) : std::string()) + ',' +
         std::to_string(r.samples) + ',' + detail::format_double(r.runtime_ms) + ',' +
         std::to_string(r.rng_seed);
  return out;
}

inline ExperimentRow parse_csv_row(std::string_view line) {
  std::vector<std::string_view> f;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    f.push_back(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (f.size() != 11) throw std::invalid_argument("expected 11 CSV fields");
  ExperimentRow r;
  r.dataset = f[0];
  r.model = f[1];
  r.activity_setting = f[2];
  r.k = detail::parse_field<std::size_t>(f[3]);
  r.algorithm = f[4];
  r.activity_estimate = detail::parse_field<double>(f[5]);
  r.gain_ratio = detail::parse_field<double>(f[6]);
  if (!f[7].empty()) r.ratio_bound = detail::parse_field<double>(f[7]);
  r.samples = detail::parse_field<std::uint64_t>(f[8]);
  r.runtime_ms = detail::parse_field<double>(f[9]);
  r.rng_seed = detail::parse_field<std::uint64_t>(f[10]);
  return r;
}

inline void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  out << kCsvHeader << '\n';
  for (const ExperimentRow& r : rows) out << to_csv(r) << '\n';
}

struct ExperimentSpec {
  std::string dataset;
  Model model = Model::ic;
  ActivitySetting activity = ActivitySetting::uniform;
  std::vector<std::size_t> ks;
  std::vector<std::string> algorithms;
  std::size_t repetitions = 1;
  StoppingConfig config;
  // Relative error of the activity evaluation; defaults to config.gamma.
  std::optional<double> eval_epsilon;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  bool timing = true;
  PageRankOptions pagerank;
};

// Seed of the selection stream for one (k, repetition, algorithm) cell.
// `actmax select --seed <rng_seed>` reproduces the cell's seed set.
inline std::uint64_t cell_seed(std::uint64_t master, std::size_t k, std::size_t repetition,
                               std::string_view algorithm) {
  std::uint64_t h = detail::mix64(master);
  h = detail::mix64(h ^ k);
  h = detail::mix64(h ^ repetition);
  for (char c : algorithm) h = detail::mix64(h ^ static_cast<unsigned char>(c));
  return h;
}

inline constexpr std::uint64_t kEvaluationSalt = 0xe7a1u;

// One row per (k, algorithm, repetition). Every seed set, the sandwich one
// included, is re-evaluated with a fresh (eval_epsilon, δ/4) activity
// estimate; gain ratios compare those estimates.
inline std::vector<ExperimentRow> run_experiment(const Graph& g, const ExperimentSpec& spec) {
  bool has_sandwich = false;
  for (const std::string& a : spec.algorithms) {
    if (!is_algorithm(a)) throw std::invalid_argument("unknown algorithm: " + a);
    has_sandwich = has_sandwich || a == "sandwich";
  }
  if (!has_sandwich)
    throw std::invalid_argument("experiment needs the sandwich algorithm as reference");

  std::vector<std::string> order{"sandwich"};
  for (const std::string& a : spec.algorithms)
    if (a != "sandwich") order.push_back(a);

  const double eval_eps = spec.eval_epsilon.value_or(spec.config.gamma);
  std::vector<ExperimentRow> rows;
  for (std::size_t k : spec.ks) {
    for (std::size_t rep = 0; rep < spec.repetitions; ++rep) {
      double reference = 0.0;
      for (const std::string& name : order) {
        const std::uint64_t seed = cell_seed(spec.seed, k, rep, name);
        StreamSet streams(seed, spec.threads);
        SelectionReport rep_report =
            run_algorithm(g, spec.model, name, k, spec.config, streams, spec.pagerank);
        StreamSet eval_streams(seed ^ kEvaluationSalt, spec.threads);
        const Estimate eval = estimate_with_stopping(g, spec.model, rep_report.seeds,
                                                     Objective::activity, eval_eps,
                                                     spec.config.delta / 4.0,
                                                     spec.config.max_samples, eval_streams);
        ExperimentRow row;
        row.dataset = spec.dataset;
        row.model = std::string(to_string(spec.model));
        row.activity_setting = std::string(to_string(spec.activity));
        row.k = k;
        row.algorithm = name;
        row.activity_estimate = eval.value;
        if (name == "sandwich") reference = eval.value;
        row.gain_ratio = name == "sandwich" ? 0.0 : gain_ratio(eval.value, reference);
        row.ratio_bound = rep_report.ratio_bound;
        row.samples = rep_report.samples;
        row.runtime_ms = spec.timing ? rep_report.wall_time_ms : 0.0;
        row.rng_seed = seed;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

}  // namespace actmax
