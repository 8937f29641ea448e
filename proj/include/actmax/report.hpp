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

#include <optional>

#include <nlohmann/json.hpp>

#include "actmax/graph.hpp"
#include "actmax/selector.hpp"

namespace actmax {

inline nlohmann::json seeds_to_json(const SeedSet& s) {
  nlohmann::json a = nlohmann::json::array();
  for (NodeId v : s.nodes()) a.push_back(v);
  return a;
}

inline nlohmann::json seed_labels_to_json(const SeedSet& s, const Graph& g) {
  nlohmann::json a = nlohmann::json::array();
  for (NodeId v : s.nodes()) a.push_back(g.label(v));
  return a;
}

inline nlohmann::json optional_number(const std::optional<double>& x) {
  return x ? nlohmann::json(*x) : nlohmann::json(nullptr);
}

// "seeds" are dense ids; "seeds_original" the ids from the input file.
inline nlohmann::json report_to_json(const SelectionReport& r, const Graph& g) {
  nlohmann::json estimates = nlohmann::json::object();
  if (r.estimates.activity) estimates["activity"] = *r.estimates.activity;
  if (r.estimates.lower) estimates["lower"] = *r.estimates.lower;
  if (r.estimates.upper) estimates["upper"] = *r.estimates.upper;
  if (r.estimates.influence) estimates["influence"] = *r.estimates.influence;

  nlohmann::json j{{"algorithm", r.algorithm},
                   {"k", r.seeds.size()},
                   {"seeds", seeds_to_json(r.seeds)},
                   {"seeds_original", seed_labels_to_json(r.seeds, g)},
                   {"estimates", estimates},
                   {"samples", r.samples},
                   {"certified", r.certified},
                   {"ratio_bound", optional_number(r.ratio_bound)},
                   {"wall_time_ms", r.wall_time_ms}};
  if (r.ratio_bound) j["estimator_failure"] = r.estimator_failure;
  if (!r.candidates.empty()) {
    nlohmann::json cands = nlohmann::json::array();
    for (const Candidate& c : r.candidates)
      cands.push_back({{"source", c.source},
                       {"seeds_original", seed_labels_to_json(c.seeds, g)},
                       {"activity_estimate", c.activity_estimate},
                       {"certified", c.certified}});
    j["candidates"] = cands;
  }
  return j;
}

}  // namespace actmax
