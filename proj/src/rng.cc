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

#include "netdp/rng.h"

#include <array>
#include <cmath>

namespace netdp {

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t DeriveSeed(uint64_t seed, uint64_t index) {
  return SplitMix64(SplitMix64(seed) ^ SplitMix64(index + 0x5851f42d4c957f2dULL));
}

Rng::Rng(RngContract contract) : contract_(contract) {
  uint64_t state = SplitMix64(contract.seed) ^
                   SplitMix64(contract.stream * 0xd1342543de82ef95ULL + 1);
  std::array<uint32_t, 8> words;
  for (size_t i = 0; i < words.size(); i += 2) {
    state = SplitMix64(state);
    words[i] = static_cast<uint32_t>(state);
    words[i + 1] = static_cast<uint32_t>(state >> 32);
  }
  std::seed_seq seq(words.begin(), words.end());
  engine_.seed(seq);
}

double Rng::Laplace(double scale) {
  // Inverse CDF on (-1/2, 1/2); the open interval avoids log(0).
  double u = Uniform() - 0.5;
  while (u == -0.5) u = Uniform() - 0.5;
  return -scale * std::copysign(1.0, u) * std::log1p(-2.0 * std::fabs(u));
}

}  // namespace netdp
