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

// Stopping-rule Monte Carlo estimation (Dagum-Karp-Luby-Ross). Sampling
// i.i.d. [0,1] variables until their sum reaches
//   Υ1 = 1 + (1 + ε) · 4(e − 2) · ln(2/δ) / ε²
// yields a relative (ε, δ) estimate of the mean.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include "actmax/diffusion.hpp"
#include "actmax/graph.hpp"
#include "actmax/polling.hpp"
#include "actmax/random.hpp"

namespace actmax {

inline void check_unit_interval(double x, const char* name) {
  if (!(x > 0.0 && x < 1.0))
    throw std::invalid_argument(std::string(name) + " must lie in (0, 1)");
}

inline double upsilon(double epsilon, double delta) {
  check_unit_interval(epsilon, "epsilon");
  check_unit_interval(delta, "delta");
  return 4.0 * (std::numbers::e - 2.0) * std::log(2.0 / delta) / (epsilon * epsilon);
}

inline double upsilon1(double epsilon, double delta) {
  return 1.0 + (1.0 + epsilon) * upsilon(epsilon, delta);
}

inline constexpr std::uint64_t kDefaultMaxSamples = 100'000'000;

// Accuracy parameters. The (ε, δ) budget of the selection loop is split as
//   ε1 = ε/2, ε2 = ε / (2(1 − 1/e)), δ1 = δ2 = δ/2,
// which meets ε1 + (1 − 1/e)ε2 ≤ ε and δ1 + δ2 ≤ δ with equality.
struct StoppingConfig {
  double epsilon = 0.1;
  double delta = 0.001;
  double gamma = 0.05;  // relative error of the estimates compared by sandwich
  std::uint64_t max_samples = kDefaultMaxSamples;
  double epsilon1 = 0.05;
  double epsilon2 = 0.1 / (2.0 * (1.0 - 1.0 / std::numbers::e));
  double delta1 = 0.0005;
  double delta2 = 0.0005;

  static StoppingConfig make(double epsilon, double delta, double gamma = 0.05,
                             std::uint64_t max_samples = kDefaultMaxSamples) {
    check_unit_interval(epsilon, "epsilon");
    check_unit_interval(delta, "delta");
    check_unit_interval(gamma, "gamma");
    if (max_samples == 0) throw std::invalid_argument("max_samples must be positive");
    StoppingConfig c;
    c.epsilon = epsilon;
    c.delta = delta;
    c.gamma = gamma;
    c.max_samples = max_samples;
    c.epsilon1 = epsilon / 2.0;
    c.epsilon2 = epsilon / (2.0 * (1.0 - 1.0 / std::numbers::e));
    c.delta1 = delta / 2.0;
    c.delta2 = delta / 2.0;
    if (!c.satisfies_split())
      throw std::logic_error("epsilon/delta split violates its constraints");
    return c;
  }

  bool satisfies_split() const {
    constexpr double kSlack = 1e-12;
    return epsilon1 + (1.0 - 1.0 / std::numbers::e) * epsilon2 <= epsilon + kSlack &&
           delta1 + delta2 <= delta + kSlack;
  }

  // 1 − 1/e − ε: the guarantee of the bound maximizers.
  double alpha() const { return 1.0 - 1.0 / std::numbers::e - epsilon; }
};

struct Estimate {
  double value = 0.0;
  std::uint64_t samples = 0;  // m_H
  std::uint64_t covered = 0;  // D(S)
  // False when max_samples ran out before D(S) reached Υ1; this happens
  // when the objective is (close to) zero.
  bool certified = false;
};

// Samples hyperedges of the kind matching `objective` until S fully covers
// Υ1(ε, δ) of them, or max_samples is hit. Returns scale · D(S) / m_H.
inline Estimate estimate_with_stopping(const Graph& g, Model model, const SeedSet& seeds,
                                       Objective objective, double epsilon, double delta,
                                       std::uint64_t max_samples, StreamSet& streams) {
  if (seeds.empty()) throw std::invalid_argument("seed set must be nonempty");
  if (max_samples == 0) throw std::invalid_argument("max_samples must be positive");
  const double threshold = upsilon1(epsilon, delta);
  const PollingContext ctx(g, model, objective);
  SamplerPool pool(ctx, streams);
  const std::vector<char> mask = seeds.mask(g.node_count());

  Estimate est;
  std::uint64_t batch = static_cast<std::uint64_t>(std::ceil(threshold));
  while (est.samples < max_samples) {
    batch = std::min(std::max(batch, est.samples), max_samples - est.samples);
    const std::vector<char> flags = pool.coverage_flags(batch, mask);
    for (char f : flags) {
      ++est.samples;
      est.covered += f != 0;
      if (static_cast<double>(est.covered) >= threshold) {
        est.certified = true;
        break;
      }
    }
    if (est.certified) break;
  }
  est.value = ctx.scale() * static_cast<double>(est.covered) / static_cast<double>(est.samples);
  return est;
}

}  // namespace actmax
