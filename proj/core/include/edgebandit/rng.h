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

#ifndef EDGEBANDIT_RNG_H_
#define EDGEBANDIT_RNG_H_

#include <cstdint>
#include <span>

namespace edgebandit {

// Independent random streams of one simulation run. Tags are part of the
// golden-output contract: never renumber them, only append.
enum class Stream : std::uint64_t {
  kPolicy = 1,
  kAttacker = 2,
  kTask = 3,
  kNoise = 4,
};

// Counter-based generator keyed by (master seed, stream tag, round).
//
// The starting state is a SplitMix64 hash of the key; successive draws walk
// the SplitMix64 sequence from there. Because every (stream, round) pair has
// its own key, adding a stream or changing how many draws one round consumes
// never shifts the values seen by any other stream or round. All transforms
// to doubles are implemented here rather than through <random> distributions
// so that outputs are identical across standard library implementations.
class CounterRng {
 public:
  CounterRng(std::uint64_t master_seed, Stream stream, std::uint64_t round);
  CounterRng(std::uint64_t master_seed, std::uint64_t stream_tag,
             std::uint64_t round);

  std::uint64_t NextU64();

  // Uniform on [0, 1) with 53 bits of resolution.
  double Uniform01();
  double Uniform(double lo, double hi);
  // Zero-mean normal via Box-Muller (one draw consumes two uniforms).
  double Gaussian(double sigma);
  // Index drawn from a probability vector by inverse-CDF walk.
  int Categorical(std::span<const double> probs);

 private:
  std::uint64_t state_;
};

// Inverse-CDF walk: returns the first index whose cumulative probability
// exceeds `u`. Rounding slack past the last bucket falls to the last index
// with positive mass.
int SampleCategorical(std::span<const double> probs, double u);

std::uint64_t SplitMix64(std::uint64_t x);

}  // namespace edgebandit

#endif  // EDGEBANDIT_RNG_H_
