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

#include "netdp/protocols.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "absl/strings/str_cat.h"
#include "netdp/rng.h"
#include "netdp/simd/vector_kernels.h"

namespace netdp {
namespace {

double UnitFromHash(uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

uint64_t ContributionKey(uint64_t seed, int32_t user, int64_t k) {
  return DeriveSeed(seed, (static_cast<uint64_t>(user) << 32) ^
                              static_cast<uint64_t>(k));
}

absl::Status CheckScalarStream(const ScalarStream& stream) {
  if (!stream.value) return absl::InvalidArgumentError("empty scalar stream");
  if (!(stream.sensitivity > 0.0)) {
    return absl::InvalidArgumentError("stream sensitivity must be positive");
  }
  return absl::OkStatus();
}

absl::Status CheckCategoryStream(const CategoryStream& stream, double gamma) {
  if (!stream.value) {
    return absl::InvalidArgumentError("empty category stream");
  }
  if (stream.domain_size < 2) {
    return absl::InvalidArgumentError("histogram domain size must be >= 2");
  }
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("gamma must lie in [0, 1) to debias, got ", gamma));
  }
  return absl::OkStatus();
}

nlohmann::ordered_json TokenJson(const Token& token) {
  return std::visit([](const auto& v) { return nlohmann::ordered_json(v); },
                    token);
}

// Shared by both summation protocols once the per-step noise scale is known.
template <typename ScaleFn>
ProtocolResult RunSum(WalkTrace walk, const ScalarStream& stream,
                      ScaleFn scale_at, uint64_t seed) {
  Rng noise(seed, Stream::kNoise);
  const double bound = stream.sensitivity / 2.0;
  std::vector<int64_t> turns(walk.n() + 1, 0);
  double token = 0.0;
  double truth = 0.0;
  ProtocolResult result;
  for (int64_t t = 1; t <= walk.length(); ++t) {
    const int32_t u = walk.user_at(t);
    const double x = ClipContribution(stream.value(u, ++turns[u]), bound);
    truth += x;
    const double scale = scale_at(t);
    if (scale > 0.0) {
      token += x + scale * noise.StandardNormal();
      result.noise_events.push_back(NoiseEvent{t, scale});
    } else {
      token += x;
    }
  }
  result.contributed.assign(walk.length(), 1);
  result.output = token;
  result.true_value = truth;
  result.trace = std::move(walk);
  return result;
}

ProtocolResult RunHist(WalkTrace walk, const CategoryStream& stream,
                       double gamma, int64_t init_block, uint64_t seed) {
  const RrSpec spec{gamma, stream.domain_size};
  Rng responses(seed, Stream::kResponse);
  std::vector<int64_t> counts(stream.domain_size, 0);
  std::vector<int64_t> truth(stream.domain_size, 0);
  ProtocolResult result;
  if (init_block > 0) {
    Rng init(seed, Stream::kInitBlock);
    for (int64_t i = 0; i < init_block; ++i) {
      ++counts[init.UniformInt(1, stream.domain_size) - 1];
    }
    result.noise_events.push_back(NoiseEvent{0, gamma});
  }
  std::vector<int64_t> turns(walk.n() + 1, 0);
  int64_t randomized = 0;
  for (int64_t t = 1; t <= walk.length(); ++t) {
    const int32_t u = walk.user_at(t);
    const int32_t x = stream.value(u, ++turns[u]);
    ++truth[x - 1];
    const RrDraw draw = RandomizeCategory(x, spec, responses);
    ++counts[draw.value - 1];
    if (draw.randomized) {
      ++randomized;
      result.noise_events.push_back(NoiseEvent{t, gamma});
    }
  }
  result.debiased = DebiasHistogram(counts, walk.length(), init_block, gamma);
  result.random_responses = randomized + init_block;
  result.init_block = init_block;
  result.contributed.assign(walk.length(), 1);
  result.output = std::move(counts);
  result.true_value = std::move(truth);
  result.trace = std::move(walk);
  return result;
}

}  // namespace

ScalarStream UniformScalarStream(uint64_t seed, double sensitivity) {
  return ScalarStream{
      [seed, sensitivity](int32_t user, int64_t k) {
        return (UnitFromHash(ContributionKey(seed, user, k)) - 0.5) *
               sensitivity;
      },
      sensitivity};
}

CategoryStream WeightedCategoryStream(uint64_t seed,
                                      std::vector<double> weights) {
  std::vector<double> cumulative(weights.size());
  std::partial_sum(weights.begin(), weights.end(), cumulative.begin());
  const double total = cumulative.empty() ? 1.0 : cumulative.back();
  for (double& c : cumulative) c /= total;
  const auto size = static_cast<int32_t>(weights.size());
  return CategoryStream{
      [seed, cumulative = std::move(cumulative)](int32_t user, int64_t k) {
        const double u = UnitFromHash(ContributionKey(seed, user, k));
        const auto it =
            std::upper_bound(cumulative.begin(), cumulative.end() - 1, u);
        return static_cast<int32_t>(it - cumulative.begin()) + 1;
      },
      size};
}

nlohmann::ordered_json ToJson(const ProtocolResult& result,
                              absl::string_view trace_path) {
  nlohmann::ordered_json out;
  out["output"] = TokenJson(result.output);
  if (!result.debiased.empty()) out["debiased"] = result.debiased;
  out["true_value"] = TokenJson(result.true_value);
  out["trace"] = trace_path;
  out["random_responses"] = result.random_responses;
  nlohmann::ordered_json events = nlohmann::ordered_json::array();
  for (const NoiseEvent& e : result.noise_events) {
    events.push_back({{"step", e.step}, {"scale", e.scale}});
  }
  out["noise_events"] = std::move(events);
  return out;
}

absl::StatusOr<ProtocolResult> RunRingSum(int64_t n, int64_t k,
                                          const ScalarStream& stream,
                                          double sigma_loc, RingNoiseMode mode,
                                          uint64_t seed) {
  if (n < 2 || k < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("ring summation needs n >= 2 and K >= 1, got n = ", n,
                     ", K = ", k));
  }
  if (!(sigma_loc >= 0.0)) {
    return absl::InvalidArgumentError("sigma_loc must be non-negative");
  }
  if (absl::Status s = CheckScalarStream(stream); !s.ok()) return s;
  auto walk = SampleWalk(Topology{TopologyKind::kDirectedRing, n}, n * k, seed);
  if (!walk.ok()) return walk.status();
  if (mode == RingNoiseMode::kDistributed) {
    const double share = sigma_loc / std::sqrt(static_cast<double>(n));
    return RunSum(*std::move(walk), stream,
                  [&](int64_t t) { return t == 1 ? sigma_loc : share; }, seed);
  }
  // Counter a: perturb when it reaches zero, then skip the next n - 2 turns.
  int64_t a = 0;
  return RunSum(
      *std::move(walk), stream,
      [&](int64_t) {
        if (a == 0) {
          a = n - 2;
          return sigma_loc;
        }
        --a;
        return 0.0;
      },
      seed);
}

std::vector<double> DebiasHistogram(std::span<const int64_t> counts,
                                    int64_t contributions, int64_t init_block,
                                    double gamma) {
  const double l = static_cast<double>(counts.size());
  const double offset = static_cast<double>(init_block) / l +
                        static_cast<double>(contributions) * gamma / l;
  std::vector<double> out(counts.size());
  for (size_t i = 0; i < counts.size(); ++i) {
    out[i] = (static_cast<double>(counts[i]) - offset) / (1.0 - gamma);
  }
  return out;
}

absl::StatusOr<ProtocolResult> RunRingHist(int64_t n, int64_t k,
                                           const CategoryStream& stream,
                                           double gamma, uint64_t seed) {
  if (n < 2 || k < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("ring histogram needs n >= 2 and K >= 1, got n = ", n,
                     ", K = ", k));
  }
  if (absl::Status s = CheckCategoryStream(stream, gamma); !s.ok()) return s;
  auto walk = SampleWalk(Topology{TopologyKind::kDirectedRing, n}, n * k, seed);
  if (!walk.ok()) return walk.status();
  const auto init_block =
      static_cast<int64_t>(std::ceil(gamma * static_cast<double>(n) - 1e-12));
  return RunHist(*std::move(walk), stream, gamma, init_block, seed);
}

absl::StatusOr<ProtocolResult> RunCompleteSum(int64_t n, int64_t length,
                                              const ScalarStream& stream,
                                              double sigma_loc,
                                              uint64_t seed) {
  if (!(sigma_loc >= 0.0)) {
    return absl::InvalidArgumentError("sigma_loc must be non-negative");
  }
  if (absl::Status s = CheckScalarStream(stream); !s.ok()) return s;
  auto walk = SampleWalk(Topology{TopologyKind::kComplete, n}, length, seed);
  if (!walk.ok()) return walk.status();
  return RunSum(*std::move(walk), stream,
                [sigma_loc](int64_t) { return sigma_loc; }, seed);
}

absl::StatusOr<ProtocolResult> RunCompleteHist(int64_t n, int64_t length,
                                               const CategoryStream& stream,
                                               double gamma, uint64_t seed) {
  if (absl::Status s = CheckCategoryStream(stream, gamma); !s.ok()) return s;
  auto walk = SampleWalk(Topology{TopologyKind::kComplete, n}, length, seed);
  if (!walk.ok()) return walk.status();
  return RunHist(*std::move(walk), stream, gamma, 0, seed);
}

absl::StatusOr<ProtocolResult> RunCompleteSgd(const SgdOptions& options,
                                              const GradientOracle& gradient,
                                              uint64_t seed) {
  if (!(options.eta > 0.0) || !(options.sigma >= 0.0) ||
      !(options.radius >= 0.0) || options.dimension < 1 ||
      options.contribution_cap < 0) {
    return absl::InvalidArgumentError(
        "SGD needs eta > 0, sigma >= 0, radius >= 0, d >= 1, cap >= 0");
  }
  if (!gradient) return absl::InvalidArgumentError("missing gradient oracle");
  const auto d = static_cast<size_t>(options.dimension);
  if (!options.initial.empty() && options.initial.size() != d) {
    return absl::InvalidArgumentError(absl::StrCat(
        "initial point has dimension ", options.initial.size(),
        ", token has ", d));
  }
  auto walk = SampleWalk(Topology{TopologyKind::kComplete, options.n},
                         options.length, seed);
  if (!walk.ok()) return walk.status();

  Rng noise(seed, Stream::kNoise);
  std::vector<double> w =
      options.initial.empty() ? std::vector<double>(d, 0.0) : options.initial;
  std::vector<double> grad(d);
  std::vector<int64_t> turns(options.n + 1, 0);
  ProtocolResult result;
  result.contributed.assign(walk->length(), 0);
  if (options.record_iterates) result.iterates.push_back(w);

  const double radius2 = options.radius * options.radius;
  for (int64_t t = 1; t <= walk->length(); ++t) {
    const int32_t u = walk->user_at(t);
    const bool capped = options.contribution_cap > 0 &&
                        turns[u] >= options.contribution_cap;
    if (!capped) {
      ++turns[u];
      gradient(u, w, grad);
      result.max_gradient_norm =
          std::max(result.max_gradient_norm, std::sqrt(simd::SquaredNorm(grad)));
      simd::Axpy(-options.eta, grad, w);
      result.contributed[t - 1] = 1;
    }
    if (options.sigma > 0.0 && (!capped || options.noise_when_capped)) {
      const double step = options.eta * options.sigma;
      for (size_t i = 0; i < d; ++i) w[i] -= step * noise.StandardNormal();
      result.noise_events.push_back(NoiseEvent{t, options.sigma});
    }
    if (options.radius > 0.0) {
      const double norm2 = simd::SquaredNorm(w);
      if (norm2 > radius2) {
        const double shrink = options.radius / std::sqrt(norm2);
        for (double& wi : w) wi *= shrink;
      }
    }
    if (options.record_iterates) result.iterates.push_back(w);
    if (options.on_step) options.on_step(t, w);
  }
  result.output = w;
  result.trace = *std::move(walk);
  return result;
}

absl::StatusOr<RingAudit> AuditRingObservations(const ProtocolResult& result) {
  const WalkTrace& walk = result.trace;
  if (walk.topology().kind != TopologyKind::kDirectedRing) {
    return absl::InvalidArgumentError("audit expects a ring trace");
  }
  const int64_t length = walk.length();
  // Prefix counts of noise events so that each window is O(1).
  std::vector<int64_t> noise_prefix(length + 1, 0);
  for (const NoiseEvent& e : result.noise_events) {
    if (e.step >= 1 && e.step <= length) ++noise_prefix[e.step];
  }
  for (int64_t t = 1; t <= length; ++t) noise_prefix[t] += noise_prefix[t - 1];

  RingAudit audit;
  // Window [from, to] holds the updates between two observations of v.
  auto check = [&](int32_t v, int64_t from, int64_t to) {
    if (from > to) return;
    ++audit.windows;
    if (noise_prefix[to] - noise_prefix[from - 1] < 1) ++audit.missing_noise;
    int64_t own = 0;
    for (int64_t t = from; t <= to; ++t) {
      if (walk.user_at(t) == v && result.contributed[t - 1]) ++own;
    }
    if (own > 1) ++audit.repeated_contribution;
  };
  for (int32_t v = 1; v <= walk.n(); ++v) {
    int64_t previous = 0;
    for (int64_t t = 1; t <= length; ++t) {
      if (walk.user_at(t) != v) continue;
      check(v, previous == 0 ? 1 : previous, t - 1);
      previous = t;
    }
  }
  return audit;
}

}  // namespace netdp
