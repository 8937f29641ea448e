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
#include <limits>
#include <random>
#include <vector>

namespace actmax {

using Rng = std::mt19937_64;

// Uniform double in [0, 1). Uses the top 53 bits when the generator yields
// full 64-bit words, which keeps draws identical across standard libraries.
template <std::uniform_random_bit_generator Urbg>
double uniform01(Urbg& rng) {
  if constexpr (Urbg::min() == 0 &&
                Urbg::max() == std::numeric_limits<std::uint64_t>::max()) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  } else {
    return std::generate_canonical<double, 53>(rng);
  }
}

template <std::uniform_random_bit_generator Urbg>
bool bernoulli(Urbg& rng, double p) {
  if (p >= 1.0) return true;
  if (p <= 0.0) return false;
  return uniform01(rng) < p;
}

// Independent per-worker random streams derived from one master seed. A
// fixed (seed, size) pair always yields the same streams.
class StreamSet {
 public:
  explicit StreamSet(std::uint64_t master_seed, std::size_t workers = 1)
      : master_seed_(master_seed) {
    if (workers == 0) workers = 1;
    streams_.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) {
      std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                        static_cast<std::uint32_t>(master_seed >> 32),
                        static_cast<std::uint32_t>(i), 0x5eedu};
      streams_.emplace_back(seq);
    }
  }

  std::size_t size() const { return streams_.size(); }
  Rng& operator[](std::size_t i) { return streams_[i]; }
  Rng& front() { return streams_.front(); }
  std::uint64_t master_seed() const { return master_seed_; }

 private:
  std::uint64_t master_seed_;
  std::vector<Rng> streams_;
};

}  // namespace actmax
