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

#include "netdp/mechanisms.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"

namespace netdp {

absl::Status ValidateNoiseSpec(const NoiseSpec& spec) {
  if (!(spec.scale > 0.0)) {
    return absl::InvalidArgumentError("noise scale must be positive");
  }
  if (!(spec.sensitivity > 0.0)) {
    return absl::InvalidArgumentError("sensitivity must be positive");
  }
  return absl::OkStatus();
}

double NoiseStdDev(const NoiseSpec& spec) {
  return spec.kind == NoiseKind::kGaussian ? spec.scale
                                           : spec.scale * std::sqrt(2.0);
}

absl::StatusOr<double> CalibrateGaussian(double sensitivity,
                                         const PrivacyBudget& budget) {
  if (!(sensitivity > 0.0)) {
    return absl::InvalidArgumentError("sensitivity must be positive");
  }
  if (!(budget.delta > 0.0 && budget.delta < 1.0)) {
    return absl::InvalidArgumentError("Gaussian mechanism needs delta in (0,1)");
  }
  if (!(budget.epsilon > 0.0)) {
    return absl::InvalidArgumentError("epsilon must be positive");
  }
  if (budget.epsilon >= 1.0) {
    return absl::OutOfRangeError(absl::StrCat(
        "classic Gaussian calibration only holds for epsilon < 1, got ",
        budget.epsilon));
  }
  return sensitivity * std::sqrt(2.0 * std::log(1.25 / budget.delta)) /
         budget.epsilon;
}

double GaussianImpliedEpsilon(double sigma, double sensitivity, double delta) {
  return sensitivity * std::sqrt(2.0 * std::log(1.25 / delta)) / sigma;
}

absl::StatusOr<double> CalibrateLaplace(double sensitivity, double epsilon) {
  if (!(sensitivity > 0.0) || !(epsilon > 0.0)) {
    return absl::InvalidArgumentError(
        "Laplace calibration needs positive sensitivity and epsilon");
  }
  return sensitivity / epsilon;
}

double Perturb(double x, const NoiseSpec& spec, Rng& rng) {
  if (spec.kind == NoiseKind::kGaussian) {
    return x + spec.scale * rng.StandardNormal();
  }
  return x + rng.Laplace(spec.scale);
}

double ClipContribution(double x, double bound) {
  return std::clamp(x, -bound, bound);
}

absl::Status ValidateRrSpec(const RrSpec& spec) {
  if (!(spec.gamma >= 0.0 && spec.gamma <= 1.0)) {
    return absl::InvalidArgumentError("gamma must lie in [0, 1]");
  }
  if (spec.domain_size < 2) {
    return absl::InvalidArgumentError("domain size must be >= 2");
  }
  return absl::OkStatus();
}

absl::StatusOr<int32_t> RandomizedResponse(int32_t x, const RrSpec& spec,
                                           Rng& rng) {
  if (absl::Status s = ValidateRrSpec(spec); !s.ok()) return s;
  if (x < 1 || x > spec.domain_size) {
    return absl::InvalidArgumentError(absl::StrCat(
        "category ", x, " outside [1, ", spec.domain_size, "]"));
  }
  return RandomizeCategory(x, spec, rng).value;
}

double RrProbability(int32_t y, int32_t x, const RrSpec& spec) {
  const double uniform = spec.gamma / spec.domain_size;
  return y == x ? 1.0 - spec.gamma + uniform : uniform;
}

absl::StatusOr<double> RrEpsilonToGamma(double epsilon0, int32_t domain_size) {
  if (!(epsilon0 > 0.0)) {
    return absl::InvalidArgumentError("epsilon0 must be positive");
  }
  if (domain_size < 2) {
    return absl::InvalidArgumentError("domain size must be >= 2");
  }
  const double l = domain_size;
  return l / (std::exp(epsilon0) + l - 1.0);
}

}  // namespace netdp
