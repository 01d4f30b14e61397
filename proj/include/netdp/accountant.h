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

#ifndef NETDP_ACCOUNTANT_H_
#define NETDP_ACCOUNTANT_H_

#include <cmath>
#include <cstdint>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "netdp/bound_report.h"
#include "netdp/core.h"

// Closed-form privacy accounting for token walks. All logarithms are natural.
namespace netdp {

// Validity windows are enforced unless the caller opts out; reports computed
// outside their window carry outside_validity = true.
enum class Validity { kChecked, kUnchecked };

enum class CompositionMode { kSimple, kAdvanced };

// How the number of visits (or contributions) of one user is bounded.
enum class VisitBound {
  // T/n + sqrt(3 T/n ln(1/delta_hat)), failing with probability delta_hat.
  kChernoff,
  // Exactly T/n visits.
  kFixed,
};

// K-fold advanced composition of (eps, delta) mechanisms:
// (sqrt(2K ln(1/delta')) eps + K eps (e^eps - 1), K delta + delta').
absl::StatusOr<PrivacyBudget> AdvancedComposition(double epsilon, double delta,
                                                  int64_t k,
                                                  double delta_prime);

// Same rule for a real-valued count, used with Chernoff visit bounds.
absl::StatusOr<PrivacyBudget> AdvancedCompositionCount(double epsilon,
                                                       double delta,
                                                       double count,
                                                       double delta_prime);

// (K eps, K delta).
PrivacyBudget SimpleComposition(double epsilon, double delta, int64_t k);

// Advanced composition of mechanisms with differing epsilons:
// sqrt(2 ln(1/delta') sum eps_i^2) + sum eps_i (e^eps_i - 1). Reduces to
// AdvancedComposition when all eps_i are equal.
class HeterogeneousComposition {
 public:
  void Add(double epsilon) {
    sum_squares_ += epsilon * epsilon;
    sum_expm1_ += epsilon * std::expm1(epsilon);
    ++count_;
  }
  int64_t count() const { return count_; }
  double Epsilon(double delta_prime) const;

 private:
  double sum_squares_ = 0.0;
  double sum_expm1_ = 0.0;
  int64_t count_ = 0;
};

// N = T p + sqrt(3 T p ln(1/delta_hat)); P(visits >= N) <= delta_hat for
// Binomial(T, p) visit counts.
absl::StatusOr<double> ChernoffVisitBound(double length, double p,
                                          double delta_hat);

// Amplification by subsampling m of n users with replacement:
// log(1 + (1 - (1 - 1/n)^m) (e^eps_A - 1)).
double SubsampleAmplify(double epsilon_a, double n, int64_t m);

// Closed-form per-cycle loss 3 eps / sqrt(n) for Gaussian aggregation;
// requires eps <= 1.
absl::StatusOr<double> CycleBoundSum(double epsilon, double n);

// Ring summation: advanced composition over K visits, plus the utility
// factor sqrt(floor(K n / (n - 1))).
absl::StatusOr<BoundReport> RingSumBound(double epsilon, double delta,
                                        int64_t n, int64_t k,
                                        double delta_prime);

// Shuffling amplification of an eps0-LDP randomizer among n users,
// 12 eps0 sqrt(ln(1/delta) / n). Window: n >= 100, eps0 < 1/2,
// delta < 1/100.
absl::StatusOr<double> ErlingssonShuffle(double epsilon0, int64_t n,
                                         double delta,
                                         Validity validity = Validity::kChecked);

struct ShuffleBound {
  double exact = 0.0;
  // 14 sqrt(ln(4/delta)) eps0 / sqrt(n); an upper bound on `exact` when
  // eps0 <= 1.
  double simplified = 0.0;
  bool outside_validity = false;
};

// Shuffling amplification with the tighter clones analysis. Window:
// eps0 <= ln(n / (16 ln(2/delta))).
absl::StatusOr<ShuffleBound> FeldmanShuffle(
    double epsilon0, double n, double delta,
    Validity validity = Validity::kChecked);

// Ring histogram: flip rate, expected random responses gamma n (K+1) and the
// composed budget. Window: eps < 1/2, delta in (0, 1/100), n > 1000.
absl::StatusOr<BoundReport> RingHistBound(double epsilon, double delta,
                                         int64_t n, int64_t k,
                                         int32_t domain_size,
                                         double delta_prime,
                                         Validity validity = Validity::kChecked);

// Inputs shared by the complete-graph bounds. With c colluders the graph is
// analyzed as one with n / c users.
struct CompleteGraphParams {
  double epsilon = 0.5;
  double delta = 1e-6;
  double n = 100;
  double length = 10000;
  double delta_prime = 1e-3;
  double delta_hat = 1e-3;
  int64_t colluders = 1;
  VisitBound visits = VisitBound::kChernoff;
  Validity validity = Validity::kChecked;
};

// Complete-graph summation, evaluated term by term from the final composed
// display (2 (N_v + T/n) cycles, 3 eps / sqrt(n) each).
absl::StatusOr<BoundReport> CompleteSumBound(const CompleteGraphParams& params);

// The same algorithm analysed under local DP: advanced composition over the
// user's own N_v (or T/n) eps-LDP contributions.
absl::StatusOr<BoundReport> LocalBaselineSum(const CompleteGraphParams& params);

// Per-cycle histogram loss min(3 m eps / 2n, 21 sqrt(ln(4/delta) m) eps / n).
struct HistCycleArms {
  double subsampling = 0.0;
  double shuffling = 0.0;
  double bound() const { return subsampling < shuffling ? subsampling : shuffling; }
};
HistCycleArms HistCycleBound(double m, double n, double epsilon, double delta);

// Complete-graph histogram. Window: eps <= 1, n >= 14^2 ln(4/delta).
absl::StatusOr<BoundReport> CompleteHistBound(const CompleteGraphParams& params,
                                             int32_t domain_size);

// Closed-form private SGD bound with q = max(2 N_u ln n / n, 2 ln(1/delta)).
// Window: eps < 1, delta < 1/2.
absl::StatusOr<BoundReport> SgdClosedFormBound(double epsilon, double delta,
                                              double n, double length,
                                              double delta_hat);

// Optimisation error bound 2 D G (2 + ln T) / sqrt(T) with
// G^2 = L^2 + 8 d L^2 ln(1.25/delta) / eps^2.
absl::StatusOr<double> SgdUtilityBound(double diameter, double lipschitz,
                                       int64_t dimension, double epsilon,
                                       double delta, int64_t length);

// c colluders behave like one user; returns the effective population n / c.
absl::StatusOr<double> CollusionAdjust(int64_t n, int64_t colluders);

// Extra loss from contributions adjacent to the observer's own turns when
// sender and receiver identities are visible.
absl::StatusOr<double> SpottedBound(double contributions, double n,
                                    double epsilon, double delta_tilde,
                                    double delta_prime, CompositionMode mode);

}  // namespace netdp

#endif  // NETDP_ACCOUNTANT_H_
