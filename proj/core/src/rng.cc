// Copyright 2026 The edgebandit Authors.
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

#include "edgebandit/rng.h"

#include <cmath>
#include <numbers>

#include "edgebandit/errors.h"

namespace edgebandit {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t Mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t SplitMix64(std::uint64_t x) { return Mix(x + kGolden); }

CounterRng::CounterRng(std::uint64_t master_seed, Stream stream,
                       std::uint64_t round)
    : CounterRng(master_seed, static_cast<std::uint64_t>(stream), round) {}

CounterRng::CounterRng(std::uint64_t master_seed, std::uint64_t stream_tag,
                       std::uint64_t round)
    : state_(SplitMix64(SplitMix64(SplitMix64(master_seed) ^ stream_tag) ^
                        round)) {}

std::uint64_t CounterRng::NextU64() {
  state_ += kGolden;
  return Mix(state_);
}

double CounterRng::Uniform01() {
  return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
}

double CounterRng::Uniform(double lo, double hi) {
  return lo + (hi - lo) * Uniform01();
}

double CounterRng::Gaussian(double sigma) {
  const double u1 = 1.0 - Uniform01();  // (0, 1]
  const double u2 = Uniform01();
  return sigma * std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

int CounterRng::Categorical(std::span<const double> probs) {
  return SampleCategorical(probs, Uniform01());
}

int SampleCategorical(std::span<const double> probs, double u) {
  if (probs.empty()) throw ContractError("categorical: empty distribution");
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw ContractError("categorical: probabilities must be finite and >= 0");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ContractError("categorical: probabilities must sum to 1");
  }
  double cdf = 0.0;
  int last_positive = -1;
  for (int i = 0; i < static_cast<int>(probs.size()); ++i) {
    if (probs[i] > 0.0) last_positive = i;
    cdf += probs[i];
    if (u < cdf && probs[i] > 0.0) return i;
  }
  return last_positive;
}

}  // namespace edgebandit
