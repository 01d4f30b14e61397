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

#include "netdp/accountant.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"

namespace netdp {
namespace {

absl::Status CheckDeltaPrime(double delta_prime) {
  if (!(delta_prime > 0.0 && delta_prime < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta' must lie in (0, 1), got ", delta_prime));
  }
  return absl::OkStatus();
}

// Returns OutOfRange for a violated window unless the caller opted out, in
// which case `outside` is set.
absl::Status Window(bool holds, Validity validity, bool* outside,
                    absl::string_view what) {
  if (holds) return absl::OkStatus();
  if (validity == Validity::kUnchecked) {
    *outside = true;
    return absl::OkStatus();
  }
  return absl::OutOfRangeError(
      absl::StrCat("outside stated validity window: ", what));
}

struct CompleteGraphTerms {
  double n_eff = 0.0;
  double visits_per_user = 0.0;   // T / n
  double deviation = 0.0;         // sqrt(3 T/n ln(1/delta_hat)), 0 if fixed
  double n_v = 0.0;
  double cycles = 0.0;            // N_v + T/n
};

absl::StatusOr<CompleteGraphTerms> ComputeTerms(
    const CompleteGraphParams& p) {
  if (!(p.n >= 1.0)) return absl::InvalidArgumentError("n must be >= 1");
  if (!(p.length >= 1.0)) return absl::InvalidArgumentError("T must be >= 1");
  if (p.colluders < 1 || (p.colluders > 1 && p.colluders >= p.n)) {
    return absl::InvalidArgumentError("colluders must satisfy 1 <= c < n");
  }
  if (absl::Status s = CheckDeltaPrime(p.delta_prime); !s.ok()) return s;
  if (!(p.delta >= 0.0 && p.delta < 1.0)) {
    return absl::InvalidArgumentError("delta must lie in [0, 1)");
  }
  CompleteGraphTerms terms;
  terms.n_eff = p.n / static_cast<double>(p.colluders);
  terms.visits_per_user = p.length / terms.n_eff;
  if (p.visits == VisitBound::kChernoff) {
    if (!(p.delta_hat > 0.0 && p.delta_hat < 1.0)) {
      return absl::InvalidArgumentError("delta_hat must lie in (0, 1)");
    }
    terms.deviation = std::sqrt(3.0 * terms.visits_per_user *
                                std::log(1.0 / p.delta_hat));
  }
  terms.n_v = terms.visits_per_user + terms.deviation;
  terms.cycles = terms.n_v + terms.visits_per_user;
  return terms;
}

void AddCompleteGraphInputs(const CompleteGraphParams& p, BoundReport& r) {
  r.AddInput("epsilon", p.epsilon)
      .AddInput("delta", p.delta)
      .AddInput("n", p.n)
      .AddInput("T", p.length)
      .AddInput("delta_prime", p.delta_prime)
      .AddInput("delta_hat",
                p.visits == VisitBound::kChernoff ? p.delta_hat : 0.0)
      .AddInput("colluders", static_cast<double>(p.colluders));
}

// The composed display shared by the summation and histogram bounds:
// sqrt((4T/n + 2 dev) ln(1/delta')) eps_cycle
//   + sqrt(2T/n + dev) eps (e^{eps_cycle} - 1).
double ComposedDisplay(const CompleteGraphTerms& t, double epsilon,
                       double eps_cycle, double delta_prime) {
  const double first =
      std::sqrt((4.0 * t.visits_per_user + 2.0 * t.deviation) *
                std::log(1.0 / delta_prime)) *
      eps_cycle;
  const double second = std::sqrt(2.0 * t.visits_per_user + t.deviation) *
                        epsilon * std::expm1(eps_cycle);
  return first + second;
}

}  // namespace

double HeterogeneousComposition::Epsilon(double delta_prime) const {
  if (count_ == 0) return 0.0;
  return std::sqrt(2.0 * std::log(1.0 / delta_prime) * sum_squares_) +
         sum_expm1_;
}

absl::StatusOr<PrivacyBudget> AdvancedCompositionCount(double epsilon,
                                                       double delta,
                                                       double count,
                                                       double delta_prime) {
  if (!(epsilon >= 0.0)) {
    return absl::InvalidArgumentError("epsilon must be non-negative");
  }
  if (!(count > 0.0)) {
    return absl::InvalidArgumentError("composition count must be positive");
  }
  if (!(delta >= 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError("delta must lie in [0, 1)");
  }
  if (absl::Status s = CheckDeltaPrime(delta_prime); !s.ok()) return s;
  return PrivacyBudget{
      std::sqrt(2.0 * count * std::log(1.0 / delta_prime)) * epsilon +
          count * epsilon * std::expm1(epsilon),
      count * delta + delta_prime};
}

absl::StatusOr<PrivacyBudget> AdvancedComposition(double epsilon, double delta,
                                                  int64_t k,
                                                  double delta_prime) {
  if (k < 1) return absl::InvalidArgumentError("K must be >= 1");
  return AdvancedCompositionCount(epsilon, delta, static_cast<double>(k),
                                  delta_prime);
}

PrivacyBudget SimpleComposition(double epsilon, double delta, int64_t k) {
  return PrivacyBudget{static_cast<double>(k) * epsilon,
                       static_cast<double>(k) * delta};
}

absl::StatusOr<double> ChernoffVisitBound(double length, double p,
                                          double delta_hat) {
  if (!(length >= 1.0)) return absl::InvalidArgumentError("T must be >= 1");
  if (!(p > 0.0 && p <= 1.0)) {
    return absl::InvalidArgumentError("p must lie in (0, 1]");
  }
  if (!(delta_hat > 0.0 && delta_hat <= 1.0)) {
    return absl::InvalidArgumentError("delta_hat must lie in (0, 1]");
  }
  const double mean = length * p;
  return mean + std::sqrt(3.0 * mean * std::log(1.0 / delta_hat));
}

double SubsampleAmplify(double epsilon_a, double n, int64_t m) {
  // 1 - (1 - 1/n)^m computed without cancellation.
  const double hit = -std::expm1(static_cast<double>(m) * std::log1p(-1.0 / n));
  return std::log1p(hit * std::expm1(epsilon_a));
}

absl::StatusOr<double> CycleBoundSum(double epsilon, double n) {
  if (!(epsilon > 0.0)) return absl::InvalidArgumentError("epsilon must be > 0");
  if (epsilon > 1.0) {
    return absl::OutOfRangeError(
        absl::StrCat("per-cycle bound needs epsilon <= 1, got ", epsilon));
  }
  if (!(n >= 1.0)) return absl::InvalidArgumentError("n must be >= 1");
  return 3.0 * epsilon / std::sqrt(n);
}

absl::StatusOr<BoundReport> RingSumBound(double epsilon, double delta,
                                        int64_t n, int64_t k,
                                        double delta_prime) {
  if (n < 2) return absl::InvalidArgumentError("ring needs n >= 2");
  auto budget = AdvancedComposition(epsilon, delta, k, delta_prime);
  if (!budget.ok()) return budget.status();
  BoundReport r;
  r.name = "ring_sum";
  r.AddInput("epsilon", epsilon)
      .AddInput("delta", delta)
      .AddInput("n", static_cast<double>(n))
      .AddInput("K", static_cast<double>(k))
      .AddInput("delta_prime", delta_prime);
  r.epsilon_out = budget->epsilon;
  r.delta_out = budget->delta;
  const int64_t noise_additions = (k * n) / (n - 1);
  r.AddIntermediate("noise_additions", static_cast<double>(noise_additions))
      .AddIntermediate("utility_std_factor",
                       std::sqrt(static_cast<double>(noise_additions)));
  return r;
}

absl::StatusOr<double> ErlingssonShuffle(double epsilon0, int64_t n,
                                         double delta, Validity validity) {
  if (!(epsilon0 > 0.0) || n < 1 || !(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(
        "shuffle bound needs eps0 > 0, n >= 1, delta in (0,1)");
  }
  bool outside = false;
  if (absl::Status s = Window(n >= 100 && epsilon0 < 0.5 && delta < 0.01,
                              validity, &outside,
                              "n >= 100, eps0 < 1/2, delta < 1/100");
      !s.ok()) {
    return s;
  }
  return 12.0 * epsilon0 *
         std::sqrt(std::log(1.0 / delta) / static_cast<double>(n));
}

absl::StatusOr<ShuffleBound> FeldmanShuffle(double epsilon0, double n,
                                            double delta, Validity validity) {
  if (!(epsilon0 >= 0.0) || !(n >= 1.0) || !(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(
        "shuffle bound needs eps0 >= 0, n >= 1, delta in (0,1)");
  }
  ShuffleBound bound;
  const double limit = std::log(n / (16.0 * std::log(2.0 / delta)));
  if (absl::Status s = Window(epsilon0 <= limit, validity,
                              &bound.outside_validity,
                              "eps0 <= ln(n / (16 ln(2/delta)))");
      !s.ok()) {
    return s;
  }
  const double e0 = std::exp(epsilon0);
  const double ln4 = std::log(4.0 / delta);
  bound.exact = std::log1p(std::expm1(epsilon0) / (e0 + 1.0) *
                           (8.0 * std::sqrt(e0 * ln4) / std::sqrt(n) +
                            8.0 * e0 / n));
  bound.simplified = 14.0 * std::sqrt(ln4) / std::sqrt(n) * epsilon0;
  return bound;
}

absl::StatusOr<BoundReport> RingHistBound(double epsilon, double delta,
                                         int64_t n, int64_t k,
                                         int32_t domain_size,
                                         double delta_prime,
                                         Validity validity) {
  if (!(epsilon > 0.0) || !(delta > 0.0 && delta < 1.0) || n < 2 || k < 0 ||
      domain_size < 2) {
    return absl::InvalidArgumentError(
        "ring histogram needs eps > 0, delta in (0,1), n >= 2, K >= 0, L >= 2");
  }
  if (absl::Status s = CheckDeltaPrime(delta_prime); !s.ok()) return s;
  BoundReport r;
  r.name = "ring_hist";
  if (absl::Status s = Window(epsilon < 0.5 && delta < 0.01 && n > 1000,
                              validity, &r.outside_validity,
                              "eps < 1/2, delta < 1/100, n > 1000");
      !s.ok()) {
    return s;
  }
  r.AddInput("epsilon", epsilon)
      .AddInput("delta", delta)
      .AddInput("n", static_cast<double>(n))
      .AddInput("K", static_cast<double>(k))
      .AddInput("L_dom", static_cast<double>(domain_size))
      .AddInput("delta_prime", delta_prime);
  const double nd = static_cast<double>(n);
  const double l = domain_size;
  const double eps_rr = 12.0 * epsilon * std::sqrt(std::log(1.0 / delta) / nd);
  const double gamma = l / (std::exp(eps_rr) + l - 1.0);
  r.AddIntermediate("eps0_rr", eps_rr)
      .AddIntermediate("gamma", gamma)
      .AddIntermediate("expected_random_responses",
                       gamma * nd * static_cast<double>(k + 1));
  if (k == 0) {
    // No contribution left the users, only the initial random block.
    r.epsilon_out = 0.0;
    r.delta_out = 0.0;
    return r;
  }
  auto budget = AdvancedComposition(epsilon, delta, k, delta_prime);
  if (!budget.ok()) return budget.status();
  r.epsilon_out = budget->epsilon;
  r.delta_out = budget->delta;
  return r;
}

absl::StatusOr<BoundReport> CompleteSumBound(const CompleteGraphParams& params) {
  if (!(params.epsilon > 0.0)) {
    return absl::InvalidArgumentError("epsilon must be > 0");
  }
  auto terms = ComputeTerms(params);
  if (!terms.ok()) return terms.status();
  BoundReport r;
  r.name = params.visits == VisitBound::kChernoff ? "complete_sum"
                                                  : "complete_sum_fixed";
  if (absl::Status s = Window(params.epsilon <= 1.0, params.validity,
                              &r.outside_validity, "eps <= 1");
      !s.ok()) {
    return s;
  }
  AddCompleteGraphInputs(params, r);
  const double eps_cycle = 3.0 * params.epsilon / std::sqrt(terms->n_eff);
  r.epsilon_out =
      ComposedDisplay(*terms, params.epsilon, eps_cycle, params.delta_prime);
  r.delta_out = terms->cycles * params.delta + params.delta_prime +
                (params.visits == VisitBound::kChernoff ? params.delta_hat
                                                        : 0.0);
  r.AddIntermediate("n_effective", terms->n_eff)
      .AddIntermediate("N_v", terms->n_v)
      .AddIntermediate("cycles", terms->cycles)
      .AddIntermediate("eps_cycle", eps_cycle);
  return r;
}

absl::StatusOr<BoundReport> LocalBaselineSum(const CompleteGraphParams& params) {
  if (!(params.epsilon > 0.0)) {
    return absl::InvalidArgumentError("epsilon must be > 0");
  }
  auto terms = ComputeTerms(params);
  if (!terms.ok()) return terms.status();
  auto budget = AdvancedCompositionCount(params.epsilon, params.delta,
                                         terms->n_v, params.delta_prime);
  if (!budget.ok()) return budget.status();
  BoundReport r;
  r.name = params.visits == VisitBound::kChernoff ? "local_baseline_sum"
                                                  : "local_baseline_sum_fixed";
  AddCompleteGraphInputs(params, r);
  r.epsilon_out = budget->epsilon;
  r.delta_out = budget->delta + (params.visits == VisitBound::kChernoff
                                     ? params.delta_hat
                                     : 0.0);
  r.AddIntermediate("N_v", terms->n_v);
  return r;
}

HistCycleArms HistCycleBound(double m, double n, double epsilon, double delta) {
  return HistCycleArms{
      3.0 * m * epsilon / (2.0 * n),
      21.0 * std::sqrt(std::log(4.0 / delta) * m) / n * epsilon};
}

absl::StatusOr<BoundReport> CompleteHistBound(const CompleteGraphParams& params,
                                             int32_t domain_size) {
  if (!(params.epsilon > 0.0)) {
    return absl::InvalidArgumentError("epsilon must be > 0");
  }
  if (!(params.delta > 0.0)) {
    return absl::InvalidArgumentError("histogram bound needs delta > 0");
  }
  if (domain_size < 2) return absl::InvalidArgumentError("L_dom must be >= 2");
  auto terms = ComputeTerms(params);
  if (!terms.ok()) return terms.status();
  BoundReport r;
  r.name = "complete_hist";
  const double ln4 = std::log(4.0 / params.delta);
  if (absl::Status s =
          Window(params.epsilon <= 1.0 && terms->n_eff >= 196.0 * ln4,
                 params.validity, &r.outside_validity,
                 "eps <= 1, n >= 14^2 ln(4/delta)");
      !s.ok()) {
    return s;
  }
  AddCompleteGraphInputs(params, r);
  r.AddInput("L_dom", static_cast<double>(domain_size));
  const double eps_cycle =
      21.0 * std::sqrt(ln4) / std::sqrt(terms->n_eff) * params.epsilon;
  r.epsilon_out =
      ComposedDisplay(*terms, params.epsilon, eps_cycle, params.delta_prime);
  r.delta_out = terms->cycles * params.delta + params.delta_prime +
                (params.visits == VisitBound::kChernoff ? params.delta_hat
                                                        : 0.0);
  const double l = domain_size;
  const double gamma = l / (std::exp(params.epsilon) + l - 1.0);
  r.AddIntermediate("n_effective", terms->n_eff)
      .AddIntermediate("N_v", terms->n_v)
      .AddIntermediate("cycles", terms->cycles)
      .AddIntermediate("eps_cycle", eps_cycle)
      .AddIntermediate("gamma", gamma)
      .AddIntermediate("expected_random_responses", gamma * params.length);
  return r;
}

absl::StatusOr<BoundReport> SgdClosedFormBound(double epsilon, double delta,
                                              double n, double length,
                                              double delta_hat) {
  if (!(epsilon > 0.0 && epsilon < 1.0) || !(delta > 0.0 && delta < 0.5)) {
    return absl::OutOfRangeError("closed-form SGD bound needs eps < 1, delta < 1/2");
  }
  if (!(n >= 2.0) || !(length >= 1.0) || !(delta_hat > 0.0 && delta_hat < 1.0)) {
    return absl::InvalidArgumentError(
        "closed-form SGD bound needs n >= 2, T >= 1, delta_hat in (0,1)");
  }
  const double n_u =
      length / n + std::sqrt(3.0 * length / n * std::log(1.0 / delta_hat));
  const double iteration_term = 2.0 * n_u * std::log(n) / n;
  const double conversion_term = 2.0 * std::log(1.0 / delta);
  const double q = std::max(iteration_term, conversion_term);
  BoundReport r;
  r.name = "sgd_closed_form";
  r.AddInput("epsilon", epsilon)
      .AddInput("delta", delta)
      .AddInput("n", n)
      .AddInput("T", length)
      .AddInput("delta_hat", delta_hat);
  r.epsilon_out = std::sqrt(2.0 * q * std::log(1.0 / delta)) * epsilon /
                  std::sqrt(std::log(1.25 / delta));
  r.delta_out = delta + delta_hat;
  // alpha = sigma sqrt(ln(1/delta)) / (L sqrt(q)) at the calibrated sigma.
  const double sigma_over_l =
      std::sqrt(8.0 * std::log(1.25 / delta)) / epsilon;
  r.AddIntermediate("N_u", n_u).AddIntermediate("q", q).AddIntermediate(
      "alpha_closed_form",
      sigma_over_l * std::sqrt(std::log(1.0 / delta)) / std::sqrt(q));
  return r;
}

absl::StatusOr<double> SgdUtilityBound(double diameter, double lipschitz,
                                       int64_t dimension, double epsilon,
                                       double delta, int64_t length) {
  if (!(diameter > 0.0) || !(lipschitz > 0.0) || dimension < 1 ||
      !(epsilon > 0.0) || !(delta > 0.0 && delta < 1.0) || length < 1) {
    return absl::InvalidArgumentError("utility bound needs positive inputs");
  }
  const double l2 = lipschitz * lipschitz;
  const double g = std::sqrt(l2 + 8.0 * static_cast<double>(dimension) * l2 *
                                      std::log(1.25 / delta) /
                                      (epsilon * epsilon));
  const double t = static_cast<double>(length);
  return 2.0 * diameter * g * (2.0 + std::log(t)) / std::sqrt(t);
}

absl::StatusOr<double> CollusionAdjust(int64_t n, int64_t colluders) {
  if (colluders < 1 || colluders >= n) {
    if (!(colluders == 1 && n == 1)) {
      return absl::InvalidArgumentError(
          absl::StrCat("colluders must satisfy 1 <= c < n, got c = ",
                       colluders, ", n = ", n));
    }
  }
  return static_cast<double>(n) / static_cast<double>(colluders);
}

absl::StatusOr<double> SpottedBound(double contributions, double n,
                                    double epsilon, double delta_tilde,
                                    double delta_prime, CompositionMode mode) {
  if (!(contributions > 0.0) || !(n > 0.0) || !(epsilon > 0.0)) {
    return absl::InvalidArgumentError("spotted bound needs positive inputs");
  }
  if (!(delta_tilde > 0.0 && delta_tilde < 1.0)) {
    return absl::InvalidArgumentError("delta_tilde must lie in (0, 1)");
  }
  const double ratio = contributions / n;
  const double spotted =
      2.0 * ratio + std::sqrt(6.0 * ratio * std::log(1.0 / delta_tilde));
  if (mode == CompositionMode::kSimple) return spotted * epsilon;
  if (absl::Status s = CheckDeltaPrime(delta_prime); !s.ok()) return s;
  return std::sqrt(spotted * std::log(1.0 / delta_prime)) * epsilon +
         spotted * epsilon * std::expm1(epsilon);
}

}  // namespace netdp
