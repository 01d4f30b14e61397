// Copyright 2026 The netdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NETDP_RNG_H_
#define NETDP_RNG_H_

#include <cstdint>
#include <random>

namespace netdp {

// Independent random streams derived from one master seed. Walk sampling,
// additive noise and randomized response never share engine state, so adding
// a draw to one of them does not shift the others.
enum class Stream : uint64_t {
  kWalk = 1,
  kNoise = 2,
  kResponse = 3,
  kInitBlock = 4,
  kData = 5,
  kContributions = 6,
};

// (seed, stream) pair; identical contracts reproduce identical draws within
// one build.
struct RngContract {
  uint64_t seed = 0;
  uint64_t stream = 0;
};

uint64_t SplitMix64(uint64_t x);

// Derives a child seed, e.g. one seed per Monte Carlo run.
uint64_t DeriveSeed(uint64_t seed, uint64_t index);

class Rng {
 public:
  explicit Rng(RngContract contract);
  Rng(uint64_t seed, Stream stream)
      : Rng(RngContract{seed, static_cast<uint64_t>(stream)}) {}

  // Uniform on [0, 1).
  double Uniform() { return uniform_(engine_); }
  // Uniform on {lo, ..., hi}.
  int64_t UniformInt(int64_t lo, int64_t hi) {
    return std::uniform_int_distribution<int64_t>(lo, hi)(engine_);
  }
  double StandardNormal() { return normal_(engine_); }
  // Centered Laplace with scale b (variance 2 b^2).
  double Laplace(double scale);

  std::mt19937_64& engine() { return engine_; }
  const RngContract& contract() const { return contract_; }

 private:
  RngContract contract_;
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace netdp

#endif  // NETDP_RNG_H_
