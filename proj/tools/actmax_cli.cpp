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

// actmax: prepare graphs, select seeds, evaluate seed sets and run
// comparative experiments.
//
//   actmax prepare    --graph g.txt [--undirected] [--out clean.txt]
//   actmax select     --graph g.txt --algorithm sandwich --k 20
//   actmax evaluate   --graph g.txt --seeds seeds.txt --metric activity
//   actmax experiment --graph g.txt --k-sweep 10,20 --algorithms sandwich,degree
//   actmax sample     --graph g.txt --objective activity --count 5
//
// Exit status: 0 on success, 2 on usage errors, 1 on runtime errors.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "actmax/actmax.hpp"

namespace {

using actmax::ActivitySetting;
using actmax::Model;
using actmax::Objective;
using actmax::Orientation;

// Options shared by every subcommand that works on a prepared instance.
struct InstanceOptions {
  std::string graph;
  bool undirected = false;
  std::string model_name = "ic";
  std::string activity_name = "uniform";
  Model model = Model::ic;
  ActivitySetting activity = ActivitySetting::uniform;
  std::optional<double> edge_prob;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  double epsilon = 0.1;
  double delta = 0.001;
  double gamma = 0.05;
  std::uint64_t max_samples = actmax::kDefaultMaxSamples;
  std::string out;
  std::string format = "json";
  bool no_timing = false;
};

const std::map<std::string, Model> kModels{{"ic", Model::ic}, {"lt", Model::lt}};
const std::map<std::string, ActivitySetting> kActivity{
    {"uniform", ActivitySetting::uniform}, {"diffusion", ActivitySetting::diffusion}};
const std::map<std::string, Objective> kObjectives{{"activity", Objective::activity},
                                                   {"lower", Objective::lower},
                                                   {"upper", Objective::upper},
                                                   {"influence", Objective::influence}};

void add_graph_options(CLI::App* cmd, InstanceOptions& o) {
  cmd->add_option("--graph", o.graph, "Edge list, one \"u v\" pair per line")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_flag("--undirected,!--directed", o.undirected,
                "Read each line as an undirected edge (two arcs)");
}

void add_instance_options(CLI::App* cmd, InstanceOptions& o) {
  add_graph_options(cmd, o);
  cmd->add_option("--model", o.model_name, "Diffusion model: ic or lt")
      ->check(CLI::IsMember({"ic", "lt"}));
  cmd->add_option("--activity", o.activity_name,
                  "Activity strengths: uniform (A=1) or diffusion (A=B)")
      ->check(CLI::IsMember({"uniform", "diffusion"}));
  cmd->add_option("--edge-prob", o.edge_prob,
                  "Constant propagation probability B on every arc (default 1/in-degree)")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--seed", o.seed, "Master RNG seed");
  cmd->add_option("--threads", o.threads, "Sampling workers")->check(CLI::PositiveNumber);
  cmd->add_option("--epsilon", o.epsilon, "Approximation slack")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--delta", o.delta, "Failure probability")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--gamma", o.gamma, "Relative error of comparison estimates")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--max-samples", o.max_samples, "Hyperedge cap per sampling phase")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", o.out, "Output file (default stdout)");
}

actmax::Graph load(const InstanceOptions& o) {
  return actmax::load_instance(o.graph,
                               o.undirected ? Orientation::undirected : Orientation::directed,
                               o.activity, o.edge_prob);
}

actmax::StoppingConfig config_of(const InstanceOptions& o) {
  return actmax::StoppingConfig::make(o.epsilon, o.delta, o.gamma, o.max_samples);
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw actmax::Error("cannot write " + path);
  out << text;
}

std::string space_joined(const actmax::SeedSet& s, const actmax::Graph& g) {
  std::string out;
  for (actmax::NodeId v : s.nodes()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(g.label(v));
  }
  return out;
}

// Seed files hold original node ids separated by whitespace or commas, with
// '#' comments, or the JSON written by `select` (its "seeds_original").
actmax::SeedSet read_seeds(const std::string& path, const actmax::Graph& g) {
  std::ifstream in(path);
  if (!in) throw actmax::Error("cannot open seeds file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  std::vector<std::uint64_t> labels;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const nlohmann::json j = nlohmann::json::parse(text);
    labels = j.at("seeds_original").get<std::vector<std::uint64_t>>();
  } else {
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
      line = line.substr(0, line.find('#'));
      for (char& c : line)
        if (c == ',') c = ' ';
      std::istringstream tokens(line);
      std::string tok;
      while (tokens >> tok) {
        std::size_t used = 0;
        std::uint64_t x = 0;
        try {
          x = std::stoull(tok, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != tok.size()) throw actmax::Error("bad node id in seeds file: " + tok);
        labels.push_back(x);
      }
    }
  }
  std::vector<actmax::NodeId> nodes;
  for (std::uint64_t label : labels) {
    const auto v = g.find_label(label);
    if (!v) throw actmax::Error("unknown node id in seeds file: " + std::to_string(label));
    nodes.push_back(*v);
  }
  return actmax::SeedSet(std::move(nodes), g.node_count());
}

int run_prepare(const InstanceOptions& o, const std::string& report_path) {
  actmax::IngestionReport report;
  const actmax::Graph g = actmax::load_edge_list(
      o.graph, o.undirected ? Orientation::undirected : Orientation::directed, &report);
  if (!o.out.empty()) {
    std::ostringstream edges;
    actmax::write_edge_list(g, edges);
    emit(o.out, edges.str());
  }
  emit(report_path, nlohmann::json(report).dump(2) + "\n");
  return 0;
}

int run_select(const InstanceOptions& o, const std::string& algorithm, std::size_t k) {
  const actmax::Graph g = load(o);
  actmax::StreamSet streams(o.seed, o.threads);
  actmax::SelectionReport r =
      actmax::run_algorithm(g, o.model, algorithm, k, config_of(o), streams);
  if (o.no_timing) r.wall_time_ms = 0.0;
  if (o.format == "csv") {
    std::ostringstream out;
    out << "algorithm,k,seeds_original,activity_estimate,samples,certified,ratio_bound,"
           "runtime_ms,rng_seed\n";
    out << r.algorithm << ',' << k << ',' << space_joined(r.seeds, g) << ','
        << (r.estimates.activity ? actmax::detail::format_double(*r.estimates.activity) : "")
        << ',' << r.samples << ',' << (r.certified ? "true" : "false") << ','
        << (r.ratio_bound ? actmax::detail::format_double(*r.ratio_bound) : "") << ','
        << actmax::detail::format_double(r.wall_time_ms) << ',' << o.seed << '\n';
    emit(o.out, out.str());
  } else {
    nlohmann::json j = actmax::report_to_json(r, g);
    j["model"] = std::string(actmax::to_string(o.model));
    j["rng_seed"] = o.seed;
    j["threads"] = o.threads;
    emit(o.out, j.dump(2) + "\n");
  }
  return 0;
}

int run_evaluate(const InstanceOptions& o, const std::string& seeds_path,
                 const std::string& metric, std::size_t trials) {
  const actmax::Graph g = load(o);
  const actmax::SeedSet seeds = read_seeds(seeds_path, g);
  actmax::StreamSet streams(o.seed, o.threads);
  nlohmann::json j{{"metric", metric},
                   {"model", std::string(actmax::to_string(o.model))},
                   {"seeds_original", actmax::seed_labels_to_json(seeds, g)}};
  if (metric == "interaction_ratio") {
    const actmax::ForwardStats s = actmax::forward_statistics(g, o.model, seeds, trials, streams);
    j["value"] = s.interaction_ratio();
    j["trials"] = s.trials;
    j["mean_inside_arcs"] = s.mean_inside_arcs;
    j["mean_touched_arcs"] = s.mean_touched_arcs;
    j["mean_active_nodes"] = s.mean_active_nodes;
  } else {
    const actmax::Estimate e =
        actmax::estimate_with_stopping(g, o.model, seeds, kObjectives.at(metric), o.epsilon,
                                       o.delta, o.max_samples, streams);
    j["value"] = e.value;
    j["samples"] = e.samples;
    j["covered"] = e.covered;
    j["certified"] = e.certified;
  }
  emit(o.out, j.dump(2) + "\n");
  return 0;
}

struct ExperimentOptions {
  std::optional<std::size_t> k;
  std::vector<std::size_t> k_sweep;
  std::vector<std::string> algorithms{actmax::kAlgorithms.begin(), actmax::kAlgorithms.end()};
  std::size_t repetitions = 1;
  std::optional<double> eval_epsilon;
  std::string dataset;
};

int run_experiment(const InstanceOptions& o, const ExperimentOptions& e) {
  const actmax::Graph g = load(o);
  actmax::ExperimentSpec spec;
  spec.dataset = e.dataset.empty() ? std::filesystem::path(o.graph).stem().string() : e.dataset;
  spec.model = o.model;
  spec.activity = o.activity;
  spec.ks = e.k_sweep;
  if (e.k) spec.ks.insert(spec.ks.begin(), *e.k);
  if (spec.ks.empty()) throw CLI::ValidationError("experiment", "give --k or --k-sweep");
  spec.algorithms = e.algorithms;
  spec.repetitions = e.repetitions;
  spec.config = config_of(o);
  spec.eval_epsilon = e.eval_epsilon;
  spec.seed = o.seed;
  spec.threads = o.threads;
  spec.timing = !o.no_timing;
  const std::vector<actmax::ExperimentRow> rows = actmax::run_experiment(g, spec);

  std::ostringstream out;
  if (o.format == "json") {
    nlohmann::json a = nlohmann::json::array();
    for (const actmax::ExperimentRow& r : rows)
      a.push_back({{"dataset", r.dataset},
                   {"model", r.model},
                   {"activity_setting", r.activity_setting},
                   {"k", r.k},
                   {"algorithm", r.algorithm},
                   {"activity_estimate", r.activity_estimate},
                   {"gain_ratio", r.gain_ratio},
                   {"ratio_bound", actmax::optional_number(r.ratio_bound)},
                   {"samples", r.samples},
                   {"runtime_ms", r.runtime_ms},
                   {"rng_seed", r.rng_seed}});
    out << a.dump(2) << '\n';
  } else {
    actmax::write_csv(out, rows);
  }
  emit(o.out, out.str());
  return 0;
}

int run_sample(const InstanceOptions& o, Objective objective, std::size_t count) {
  const actmax::Graph g = load(o);
  actmax::StreamSet streams(o.seed, o.threads);
  const actmax::PollingContext ctx(g, o.model, objective);
  actmax::SamplerPool pool(ctx, streams);
  actmax::Hypergraph h(g.node_count());
  pool.generate(count, h);
  emit(o.out, actmax::hyperedges_to_json(h, g).dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Activity maximization: seed selection and experiments"};
  app.require_subcommand(1);
  InstanceOptions opt;

  auto* prepare = app.add_subcommand("prepare", "Ingest an edge list and report its statistics");
  std::string report_path;
  add_graph_options(prepare, opt);
  prepare->add_option("--out", opt.out, "Write the cleaned edge list here");
  prepare->add_option("--report", report_path, "Ingestion report JSON (default stdout)");

  auto* select = app.add_subcommand("select", "Select k seeds with one algorithm");
  std::string algorithm = "sandwich";
  std::size_t k = 0;
  add_instance_options(select, opt);
  select->add_option("--algorithm", algorithm, "Selection algorithm")
      ->check(CLI::IsMember(std::vector<std::string>(actmax::kAlgorithms.begin(),
                                                     actmax::kAlgorithms.end())));
  select->add_option("--k", k, "Seed budget")->required()->check(CLI::PositiveNumber);
  select->add_option("--format", opt.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  select->add_flag("--no-timing", opt.no_timing, "Report wall time as 0 for byte-stable output");

  auto* evaluate = app.add_subcommand("evaluate", "Evaluate a seed set");
  std::string seeds_path, metric = "activity";
  std::size_t trials = 10000;
  add_instance_options(evaluate, opt);
  evaluate->add_option("--seeds", seeds_path, "Seed file (original ids or select JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate->add_option("--metric", metric, "Metric to evaluate")
      ->check(CLI::IsMember({"activity", "lower", "upper", "influence", "interaction_ratio"}));
  evaluate->add_option("--trials", trials, "Forward simulations for interaction_ratio")
      ->check(CLI::PositiveNumber);

  auto* experiment = app.add_subcommand("experiment", "Comparative gain-ratio experiment");
  ExperimentOptions exp;
  add_instance_options(experiment, opt);
  auto* exp_k = experiment->add_option("--k", exp.k, "Seed budget")->check(CLI::PositiveNumber);
  experiment->add_option("--k-sweep", exp.k_sweep, "Comma-separated budgets")
      ->delimiter(',')
      ->check(CLI::PositiveNumber)
      ->excludes(exp_k);
  experiment->add_option("--algorithms", exp.algorithms, "Comma-separated algorithms")
      ->delimiter(',')
      ->check(CLI::IsMember(std::vector<std::string>(actmax::kAlgorithms.begin(),
                                                     actmax::kAlgorithms.end())));
  experiment->add_option("--repetitions", exp.repetitions, "Repetitions per (k, algorithm)")
      ->check(CLI::PositiveNumber);
  experiment->add_option("--eval-epsilon", exp.eval_epsilon,
                         "Relative error of the activity evaluation (default: gamma)")
      ->check(CLI::Range(0.0, 1.0));
  experiment->add_option("--dataset", exp.dataset, "Dataset name for the CSV (default: file stem)");
  opt.format = "csv";
  experiment->add_option("--format", opt.format, "csv or json")
      ->check(CLI::IsMember({"json", "csv"}));
  experiment->add_flag("--no-timing", opt.no_timing, "Report runtimes as 0 for byte-stable output");

  auto* sample = app.add_subcommand("sample", "Dump sampled hyperedges as JSON");
  std::string objective = "activity";
  std::size_t count = 10;
  add_instance_options(sample, opt);
  sample->add_option("--objective", objective, "Hyperedge kind")
      ->check(CLI::IsMember({"activity", "lower", "upper", "influence"}));
  sample->add_option("--count", count, "Number of hyperedges")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  // `select` defaults to JSON; `experiment` set its own default above.
  if (select->parsed() && select->count("--format") == 0) opt.format = "json";
  opt.model = kModels.at(opt.model_name);
  opt.activity = kActivity.at(opt.activity_name);

  try {
    if (prepare->parsed()) return run_prepare(opt, report_path);
    if (select->parsed()) return run_select(opt, algorithm, k);
    if (evaluate->parsed()) return run_evaluate(opt, seeds_path, metric, trials);
    if (experiment->parsed()) return run_experiment(opt, exp);
    if (sample->parsed()) return run_sample(opt, kObjectives.at(objective), count);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
