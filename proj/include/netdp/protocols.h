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

#ifndef NETDP_PROTOCOLS_H_
#define NETDP_PROTOCOLS_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "json.hpp"
#include "netdp/core.h"
#include "netdp/mechanisms.h"

namespace netdp {

// Contribution x_u^k of user u (1-based) at its k-th turn (1-based).
struct ScalarStream {
  std::function<double(int32_t user, int64_t k)> value;
  // Contributions are clipped to [-sensitivity/2, sensitivity/2].
  double sensitivity = 1.0;
};

struct CategoryStream {
  std::function<int32_t(int32_t user, int64_t k)> value;
  int32_t domain_size = 2;
};

// Deterministic contributions uniform on the clip range, keyed by
// (seed, user, k).
ScalarStream UniformScalarStream(uint64_t seed, double sensitivity = 1.0);
// Deterministic categories keyed by (seed, user, k), drawn from `weights`.
CategoryStream WeightedCategoryStream(uint64_t seed,
                                      std::vector<double> weights);

struct NoiseEvent {
  int64_t step = 0;  // 1-based walk position
  double scale = 0.0;
};

struct ProtocolResult {
  Token output;
  // Histogram protocols only.
  std::vector<double> debiased;
  WalkTrace trace;
  std::vector<NoiseEvent> noise_events;
  Token true_value;
  // Randomized-branch draws, init block included.
  int64_t random_responses = 0;
  int64_t init_block = 0;
  // Per step: whether the holder added a contribution (the SGD cap can
  // suppress it).
  std::vector<uint8_t> contributed;
  // SGD only.
  std::vector<std::vector<double>> iterates;
  double max_gradient_norm = 0.0;
};

nlohmann::ordered_json ToJson(const ProtocolResult& result,
                              absl::string_view trace_path);

enum class RingNoiseMode {
  // One user in n-1 perturbs with the full scale.
  kSingleNoiser,
  // Every user perturbs with sigma / sqrt(n), the first with sigma.
  kDistributed,
};

absl::StatusOr<ProtocolResult> RunRingSum(int64_t n, int64_t k,
                                          const ScalarStream& stream,
                                          double sigma_loc, RingNoiseMode mode,
                                          uint64_t seed);

absl::StatusOr<ProtocolResult> RunRingHist(int64_t n, int64_t k,
                                           const CategoryStream& stream,
                                           double gamma, uint64_t seed);

absl::StatusOr<ProtocolResult> RunCompleteSum(int64_t n, int64_t length,
                                              const ScalarStream& stream,
                                              double sigma_loc, uint64_t seed);

absl::StatusOr<ProtocolResult> RunCompleteHist(int64_t n, int64_t length,
                                               const CategoryStream& stream,
                                               double gamma, uint64_t seed);

// Unbiased histogram estimate from a randomized token.
std::vector<double> DebiasHistogram(std::span<const int64_t> counts,
                                    int64_t contributions, int64_t init_block,
                                    double gamma);

// Writes the gradient of f(w; D_u) for user u into `grad`.
using GradientOracle = std::function<void(
    int32_t user, std::span<const double> w, std::span<double> grad)>;

struct SgdOptions {
  int64_t n = 1;
  int64_t length = 1;
  int64_t dimension = 1;
  double eta = 0.1;
  double sigma = 0.0;
  // L2-ball radius for the projection; 0 means no projection.
  double radius = 0.0;
  // Per-user contribution cap; 0 means uncapped.
  int64_t contribution_cap = 0;
  // A capped user still perturbs the token.
  bool noise_when_capped = true;
  bool record_iterates = false;
  std::vector<double> initial;
  // Called after every step with the 1-based step and the new iterate.
  std::function<void(int64_t, std::span<const double>)> on_step;
};

absl::StatusOr<ProtocolResult> RunCompleteSgd(const SgdOptions& options,
                                              const GradientOracle& gradient,
                                              uint64_t seed);

struct RingAudit {
  int64_t windows = 0;
  int64_t missing_noise = 0;
  int64_t repeated_contribution = 0;
  int64_t violations() const { return missing_noise + repeated_contribution; }
};

// For every user v, checks each token difference between consecutive
// arrivals at v (and the prefix before v's first arrival) for a noise event
// and at most one contribution of v.
absl::StatusOr<RingAudit> AuditRingObservations(const ProtocolResult& result);

}  // namespace netdp

#endif  // NETDP_PROTOCOLS_H_
