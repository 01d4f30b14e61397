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

#ifndef NETDP_RDP_H_
#define NETDP_RDP_H_

#include <cstdint>
#include <span>
#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace netdp {

struct RdpPoint {
  double alpha = 2.0;
  double eps_rdp = 0.0;
};

// Sums eps_rdp at the shared order. `alpha` is used for the empty case.
absl::StatusOr<RdpPoint> RdpCompose(double alpha,
                                    std::span<const RdpPoint> points);

absl::StatusOr<double> RdpToDp(const RdpPoint& point, double delta);

RdpPoint PnsgdIterationRdp(double alpha, double lipschitz, double sigma,
                           int64_t steps_remaining);

// Partial sum of (1/n)(1-1/n)^t / t for t = 1..terms.
double GeometricIterationSum(double n, int64_t terms);

// (alpha, 4 T_u alpha L^2 ln n / (sigma^2 n)); needs sigma >= L sqrt(2a(a-1)).
absl::StatusOr<RdpPoint> SgdNetworkRdp(double alpha, double contributions,
                                       double lipschitz, double sigma,
                                       double n);

// Largest order allowed by the weak-convexity condition at this sigma.
double MaxAlphaForSigma(double sigma, double lipschitz);

struct NetworkEpsilon {
  double epsilon = 0.0;
  double alpha = 0.0;
};

// Network SGD epsilon at the best feasible order for this sigma.
absl::StatusOr<NetworkEpsilon> NetworkSgdEpsilon(double sigma,
                                                 double contributions,
                                                 double lipschitz, double n,
                                                 double delta);

struct SigmaSearchOptions {
  double sigma_min = 1e-3;
  double sigma_max = 1e6;
  // Grid ratio between consecutive candidates.
  double ratio = 1.01;
};

struct SigmaSearchResult {
  double sigma = 0.0;
  double alpha = 0.0;
  double epsilon = 0.0;
};

absl::StatusOr<SigmaSearchResult> SigmaSearch(
    double epsilon_target, double delta_target, double contributions,
    double n, double lipschitz, const SigmaSearchOptions& options = {});

// Sampled Gaussian mechanism with sampling rate q and noise multiplier z.
// Integer orders use the binomial expansion; others use quadrature.
absl::StatusOr<double> SampledGaussianRdp(double q, double noise_multiplier,
                                          double alpha);
double SampledGaussianRdpQuadrature(double q, double noise_multiplier,
                                    double alpha);

// Best (epsilon, alpha) over the fixed order grid for `steps` compositions.
absl::StatusOr<NetworkEpsilon> SampledGaussianEpsilon(double q,
                                                      double noise_multiplier,
                                                      int64_t steps,
                                                      double delta);

}  // namespace netdp

#endif  // NETDP_RDP_H_
