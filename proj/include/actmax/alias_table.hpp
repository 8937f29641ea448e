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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "actmax/error.hpp"
#include "actmax/random.hpp"

namespace actmax {

// Walker/Vose alias table: O(n) construction, O(1) draws with probability
// proportional to the input weights.
class AliasTable {
 public:
  AliasTable() = default;

  explicit AliasTable(std::span<const double> weights) {
    const std::size_t n = weights.size();
    double total = 0.0;
    for (double w : weights) {
      if (!(w >= 0.0) || !std::isfinite(w))
        throw Error("alias table weights must be finite and non-negative");
      total += w;
    }
    if (n == 0 || total <= 0.0)
      throw DegenerateWeightsError("alias table needs a positive weight total");

    total_ = total;
    prob_.assign(n, 0.0);
    alias_.assign(n, 0);
    std::vector<double> scaled(n);
    std::vector<std::uint32_t> small, large;
    small.reserve(n);
    large.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      scaled[i] = weights[i] * static_cast<double>(n) / total;
      (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
    }
    while (!small.empty() && !large.empty()) {
      const std::uint32_t s = small.back();
      small.pop_back();
      const std::uint32_t l = large.back();
      prob_[s] = scaled[s];
      alias_[s] = l;
      scaled[l] = (scaled[l] + scaled[s]) - 1.0;
      if (scaled[l] < 1.0) {
        large.pop_back();
        small.push_back(l);
      }
    }
    // Leftovers are 1 up to rounding.
    for (std::uint32_t i : large) prob_[i] = 1.0, alias_[i] = i;
    for (std::uint32_t i : small) prob_[i] = 1.0, alias_[i] = i;
  }

  std::size_t size() const { return prob_.size(); }
  bool empty() const { return prob_.empty(); }
  double total() const { return total_; }

  template <std::uniform_random_bit_generator Urbg>
  std::size_t sample(Urbg& rng) const {
    const double u = uniform01(rng) * static_cast<double>(prob_.size());
    std::size_t column = static_cast<std::size_t>(u);
    if (column >= prob_.size()) column = prob_.size() - 1;
    return (u - static_cast<double>(column)) < prob_[column] ? column
                                                            : alias_[column];
  }

  // Exact probability the table assigns to index i (for checks).
  double probability(std::size_t i) const {
    double p = prob_[i];
    for (std::size_t j = 0; j < prob_.size(); ++j)
      if (alias_[j] == i && j != i) p += 1.0 - prob_[j];
    return p / static_cast<double>(prob_.size());
  }

 private:
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
  double total_ = 0.0;
};

}  // namespace actmax
