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

#include "netdp/rdp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "absl/strings/str_cat.h"
#include "boost/math/quadrature/sinh_sinh.hpp"

namespace netdp {
namespace {

constexpr double kPi = 3.14159265358979323846;

double LogSumExp(const std::vector<double>& terms) {
  const double top = *std::max_element(terms.begin(), terms.end());
  if (!std::isfinite(top)) return top;
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - top);
  return top + std::log(sum);
}

std::vector<double> OrderGrid() {
  std::vector<double> grid = {1.5};
  for (int a = 2; a <= 64; ++a) grid.push_back(a);
  return grid;
}

}  // namespace

absl::StatusOr<RdpPoint> RdpCompose(double alpha,
                                    std::span<const RdpPoint> points) {
  RdpPoint out{alpha, 0.0};
  if (!points.empty()) out.alpha = points.front().alpha;
  for (const RdpPoint& p : points) {
    if (p.alpha != out.alpha) {
      return absl::InvalidArgumentError(absl::StrCat(
          "cannot compose RDP points at different orders: ", out.alpha,
          " and ", p.alpha));
    }
    out.eps_rdp += p.eps_rdp;
  }
  return out;
}

absl::StatusOr<double> RdpToDp(const RdpPoint& point, double delta) {
  if (!(point.alpha > 1.0)) {
    return absl::InvalidArgumentError("RDP order must exceed 1");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError("delta must lie in (0, 1)");
  }
  return point.eps_rdp + std::log(1.0 / delta) / (point.alpha - 1.0);
}

RdpPoint PnsgdIterationRdp(double alpha, double lipschitz, double sigma,
                           int64_t steps_remaining) {
  return RdpPoint{alpha, alpha * 2.0 * lipschitz * lipschitz /
                             (sigma * sigma *
                              static_cast<double>(steps_remaining))};
}

double GeometricIterationSum(double n, int64_t terms) {
  const double keep = 1.0 - 1.0 / n;
  double power = 1.0;
  double sum = 0.0;
  for (int64_t t = 1; t <= terms; ++t) {
    power *= keep;
    if (power == 0.0) break;
    sum += power / static_cast<double>(t);
  }
  return sum / n;
}

double MaxAlphaForSigma(double sigma, double lipschitz) {
  return 0.5 + std::sqrt(0.25 + sigma * sigma / (2.0 * lipschitz * lipschitz));
}

absl::StatusOr<RdpPoint> SgdNetworkRdp(double alpha, double contributions,
                                       double lipschitz, double sigma,
                                       double n) {
  if (!(alpha > 1.0) || !(sigma > 0.0) || !(lipschitz >= 0.0) ||
      !(n >= 2.0) || !(contributions >= 0.0)) {
    return absl::InvalidArgumentError(
        "network RDP needs alpha > 1, sigma > 0, L >= 0, n >= 2, T_u >= 0");
  }
  const double needed = lipschitz * std::sqrt(2.0 * alpha * (alpha - 1.0));
  if (sigma < needed) {
    return absl::OutOfRangeError(absl::StrCat(
        "sigma = ", sigma, " below L sqrt(2 alpha (alpha - 1)) = ", needed));
  }
  // One contribution: the geometric expectation of the iteration bound is at
  // most 2 alpha L^2 ln n / (sigma^2 n); weak convexity doubles it.
  const double per_contribution =
      2.0 * (2.0 * alpha * lipschitz * lipschitz * std::log(n) /
             (sigma * sigma * n));
  return RdpPoint{alpha, contributions * per_contribution};
}

absl::StatusOr<NetworkEpsilon> NetworkSgdEpsilon(double sigma,
                                                 double contributions,
                                                 double lipschitz, double n,
                                                 double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError("delta must lie in (0, 1)");
  }
  if (!(lipschitz > 0.0) || !(contributions > 0.0)) {
    return absl::InvalidArgumentError("L and T_u must be positive");
  }
  const double scale = 4.0 * contributions * lipschitz * lipschitz *
                       std::log(n) / n;
  const double log_delta = std::log(1.0 / delta);
  double alpha = 1.0 + sigma * std::sqrt(log_delta / scale);
  alpha = std::min(alpha, MaxAlphaForSigma(sigma, lipschitz));
  auto point = SgdNetworkRdp(alpha, contributions, lipschitz, sigma, n);
  if (!point.ok()) {
    // Rounding at the boundary; step inside it.
    alpha = std::nextafter(alpha, 1.0);
    point = SgdNetworkRdp(alpha, contributions, lipschitz, sigma, n);
    if (!point.ok()) return point.status();
  }
  auto eps = RdpToDp(*point, delta);
  if (!eps.ok()) return eps.status();
  return NetworkEpsilon{*eps, alpha};
}

absl::StatusOr<SigmaSearchResult> SigmaSearch(
    double epsilon_target, double delta_target, double contributions,
    double n, double lipschitz, const SigmaSearchOptions& options) {
  if (!(epsilon_target > 0.0) || !(delta_target > 0.0 && delta_target < 1.0)) {
    return absl::InvalidArgumentError("invalid privacy target");
  }
  if (!(contributions >= 1.0)) {
    return absl::InvalidArgumentError("T_u must be >= 1");
  }
  if (!(options.ratio > 1.0) || !(options.sigma_min > 0.0) ||
      !(options.sigma_max > options.sigma_min)) {
    return absl::InvalidArgumentError("invalid sigma grid");
  }
  const double log_ratio = std::log(options.ratio);
  const auto count = static_cast<int64_t>(
      std::floor(std::log(options.sigma_max / options.sigma_min) / log_ratio));
  auto sigma_at = [&](int64_t k) {
    return options.sigma_min * std::exp(static_cast<double>(k) * log_ratio);
  };
  auto evaluate = [&](int64_t k) {
    return NetworkSgdEpsilon(sigma_at(k), contributions, lipschitz, n,
                             delta_target);
  };
  // The achieved epsilon is non-increasing in sigma, so the first feasible
  // grid point is found by bisection.
  auto top = evaluate(count);
  if (!top.ok()) return top.status();
  if (top->epsilon > epsilon_target) {
    return absl::FailedPreconditionError(absl::StrCat(
        "no sigma <= ", options.sigma_max, " reaches epsilon ",
        epsilon_target, " (best ", top->epsilon, " at alpha ", top->alpha,
        ", T_u = ", contributions, ", n = ", n, ")"));
  }
  int64_t lo = -1;
  int64_t hi = count;
  while (hi - lo > 1) {
    const int64_t mid = lo + (hi - lo) / 2;
    auto at = evaluate(mid);
    if (!at.ok()) return at.status();
    if (at->epsilon <= epsilon_target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  auto best = evaluate(hi);
  if (!best.ok()) return best.status();
  return SigmaSearchResult{sigma_at(hi), best->alpha, best->epsilon};
}

absl::StatusOr<double> SampledGaussianRdp(double q, double noise_multiplier,
                                          double alpha) {
  if (!(q >= 0.0 && q <= 1.0) || !(noise_multiplier > 0.0) ||
      !(alpha > 1.0)) {
    return absl::InvalidArgumentError(
        "sampled Gaussian RDP needs q in [0,1], z > 0, alpha > 1");
  }
  if (q == 0.0) return 0.0;
  if (alpha != std::floor(alpha)) {
    return SampledGaussianRdpQuadrature(q, noise_multiplier, alpha);
  }
  const auto a = static_cast<int64_t>(alpha);
  const double z2 = noise_multiplier * noise_multiplier;
  std::vector<double> terms;
  terms.reserve(a + 1);
  for (int64_t k = 0; k <= a; ++k) {
    const double kd = static_cast<double>(k);
    double log_term = std::lgamma(alpha + 1.0) - std::lgamma(kd + 1.0) -
                      std::lgamma(alpha - kd + 1.0) +
                      (kd * kd - kd) / (2.0 * z2);
    if (k > 0) log_term += kd * std::log(q);
    if (k < a) log_term += (alpha - kd) * std::log1p(-q);
    terms.push_back(log_term);
  }
  return LogSumExp(terms) / (alpha - 1.0);
}

double SampledGaussianRdpQuadrature(double q, double noise_multiplier,
                                    double alpha) {
  const double z2 = noise_multiplier * noise_multiplier;
  const double log_norm = -0.5 * std::log(2.0 * kPi * z2);
  const double log_keep = std::log1p(-q);
  const double log_q = std::log(q);
  auto integrand = [&](double x) {
    // log((1 - q) + q exp(y)) evaluated as a log-sum-exp.
    const double y = (2.0 * x - 1.0) / (2.0 * z2);
    const double a = log_keep;
    const double b = log_q + y;
    const double mix =
        a > b ? a + std::log1p(std::exp(b - a)) : b + std::log1p(std::exp(a - b));
    const double exponent = alpha * mix + log_norm - x * x / (2.0 * z2);
    return std::isfinite(exponent) ? std::exp(exponent) : 0.0;
  };
  boost::math::quadrature::sinh_sinh<double> integrator;
  const double moment = integrator.integrate(integrand);
  return std::log(moment) / (alpha - 1.0);
}

absl::StatusOr<NetworkEpsilon> SampledGaussianEpsilon(double q,
                                                      double noise_multiplier,
                                                      int64_t steps,
                                                      double delta) {
  if (steps < 1) return absl::InvalidArgumentError("steps must be >= 1");
  NetworkEpsilon best{std::numeric_limits<double>::infinity(), 0.0};
  for (double alpha : OrderGrid()) {
    auto rdp = SampledGaussianRdp(q, noise_multiplier, alpha);
    if (!rdp.ok()) return rdp.status();
    auto eps = RdpToDp(RdpPoint{alpha, static_cast<double>(steps) * *rdp},
                       delta);
    if (!eps.ok()) return eps.status();
    if (*eps < best.epsilon) best = NetworkEpsilon{*eps, alpha};
  }
  return best;
}

}  // namespace netdp
