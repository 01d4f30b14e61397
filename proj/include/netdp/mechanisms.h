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

#ifndef NETDP_MECHANISMS_H_
#define NETDP_MECHANISMS_H_

#include <cstdint>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "netdp/core.h"
#include "netdp/rng.h"

namespace netdp {

enum class NoiseKind { kGaussian, kLaplace };

// Additive local randomizer. `scale` is the standard deviation for Gaussian
// noise and the Laplace scale b otherwise.
struct NoiseSpec {
  NoiseKind kind = NoiseKind::kGaussian;
  double scale = 1.0;
  double sensitivity = 1.0;
};

absl::Status ValidateNoiseSpec(const NoiseSpec& spec);

// Standard deviation of the noise described by `spec`.
double NoiseStdDev(const NoiseSpec& spec);

// Classic Gaussian mechanism: sigma = sensitivity * sqrt(2 ln(1.25/delta)) /
// epsilon. Only valid for epsilon < 1; larger values are rejected with
// OutOfRange.
absl::StatusOr<double> CalibrateGaussian(double sensitivity,
                                         const PrivacyBudget& budget);

// Inverse of CalibrateGaussian: the epsilon a given sigma buys at `delta`.
double GaussianImpliedEpsilon(double sigma, double sensitivity, double delta);

// Laplace scale b = sensitivity / epsilon, giving (epsilon, 0)-LDP.
absl::StatusOr<double> CalibrateLaplace(double sensitivity, double epsilon);

// x plus centered noise drawn from `rng`. The spec is not re-validated here.
double Perturb(double x, const NoiseSpec& spec, Rng& rng);

// Clips a scalar contribution to [-bound, bound].
double ClipContribution(double x, double bound);

// L-ary randomized response: keep x with probability 1 - gamma, otherwise
// report a uniform category (which may coincide with x).
struct RrSpec {
  double gamma = 0.0;
  int32_t domain_size = 2;
};

absl::Status ValidateRrSpec(const RrSpec& spec);

struct RrDraw {
  int32_t value = 1;
  // True when the output came from the uniform branch.
  bool randomized = false;
};

// Hot-path variant; assumes a validated spec and x in [1, domain_size].
inline RrDraw RandomizeCategory(int32_t x, const RrSpec& spec, Rng& rng) {
  if (spec.gamma > 0.0 && rng.Uniform() < spec.gamma) {
    return RrDraw{static_cast<int32_t>(rng.UniformInt(1, spec.domain_size)),
                  true};
  }
  return RrDraw{x, false};
}

absl::StatusOr<int32_t> RandomizedResponse(int32_t x, const RrSpec& spec,
                                           Rng& rng);

// P(output = y | input = x) under `spec`.
double RrProbability(int32_t y, int32_t x, const RrSpec& spec);

// gamma = L / (e^eps0 + L - 1), the flip rate making kRR eps0-LDP.
absl::StatusOr<double> RrEpsilonToGamma(double epsilon0, int32_t domain_size);

}  // namespace netdp

#endif  // NETDP_MECHANISMS_H_
