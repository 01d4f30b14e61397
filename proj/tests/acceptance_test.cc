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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "boost/math/distributions/students_t.hpp"
#include "netdp/accountant.h"
#include "netdp/config.h"
#include "netdp/core.h"
#include "netdp/dpml.h"
#include "netdp/empirical.h"
#include "netdp/experiments.h"
#include "netdp/protocols.h"
#include "netdp/rdp.h"
#include "netdp/rng.h"

namespace netdp {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

constexpr uint64_t kSeed = 20260101;

double Mean(const std::vector<double>& xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) /
         static_cast<double>(xs.size());
}

double SampleStd(const std::vector<double>& xs) {
  const double m = Mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

Outcome RingSumVariance() {
  const int64_t n = 100, k = 10, runs = 100000;
  const ScalarStream stream = UniformScalarStream(kSeed);
  std::vector<double> outputs(runs);
  double truth = 0.0;
  size_t events = 0;
  for (int64_t r = 0; r < runs; ++r) {
    auto res = RunRingSum(n, k, stream, 1.0, RingNoiseMode::kSingleNoiser,
                          DeriveSeed(kSeed, r));
    if (!res.ok()) return {false, res.status().ToString()};
    outputs[r] = std::get<double>(res->output);
    truth = std::get<double>(res->true_value);
    events = res->noise_events.size();
  }
  std::vector<double> errors(runs);
  for (int64_t r = 0; r < runs; ++r) errors[r] = outputs[r] - truth;
  const double sd = SampleStd(errors);
  const double target = std::sqrt(10.0);
  const double rel = std::fabs(sd / target - 1.0);
  return {rel <= 0.03,
          absl::StrFormat("std=%.4f target=sqrt(10)=%.4f rel_err=%.4f; "
                          "noise events per run=%d (sqrt=%.4f)",
                          sd, target, rel, events,
                          std::sqrt(static_cast<double>(events)))};
}

Outcome RingAuditPrecondition() {
  int64_t windows = 0, violations = 0;
  for (int64_t r = 0; r < 1000; ++r) {
    const int64_t n = 2 + r % 99;
    auto res = RunRingSum(n, 10, UniformScalarStream(r), 1.0,
                          RingNoiseMode::kSingleNoiser, DeriveSeed(kSeed, r));
    if (!res.ok()) return {false, res.status().ToString()};
    auto audit = AuditRingObservations(*res);
    if (!audit.ok()) return {false, audit.status().ToString()};
    windows += audit->windows;
    violations += audit->violations();
  }
  return {violations == 0,
          absl::StrCat("traces=1000 windows=", windows,
                       " violations=", violations)};
}

Outcome CycleDomination() {
  int64_t checked = 0, violations = 0;
  double worst = 0.0;
  for (double n : {10.0, 1e2, 1e3, 1e4}) {
    for (double eps : {0.1, 0.5, 1.0}) {
      auto bound = CycleBoundSum(eps, n);
      if (!bound.ok()) return {false, bound.status().ToString()};
      for (int64_t m = 1; m <= static_cast<int64_t>(n); ++m) {
        const double loss = SubsampleAmplify(
            eps / std::sqrt(static_cast<double>(m)), n, m);
        ++checked;
        worst = std::max(worst, loss / *bound);
        if (!(loss <= *bound)) ++violations;
      }
    }
  }
  return {violations == 0,
          absl::StrFormat("points=%d violations=%d max_ratio=%.6f", checked,
                          violations, worst)};
}

CompleteGraphParams GraphParams(double eps0, double n) {
  CompleteGraphParams p;
  p.epsilon = eps0;
  p.delta = 1e-6;
  p.n = n;
  p.length = 100 * n;
  p.delta_prime = 1e-3;
  p.delta_hat = 1e-3;
  return p;
}

Outcome Crossover() {
  bool pass = true;
  std::string detail;
  for (double eps0 : {0.5, 1.0}) {
    for (double n : {20.0, 50.0, 1e2, 1e3, 1e4}) {
      auto net = CompleteSumBound(GraphParams(eps0, n));
      auto loc = LocalBaselineSum(GraphParams(eps0, n));
      if (!net.ok() || !loc.ok()) return {false, "bound evaluation failed"};
      if (!(net->epsilon_out < loc->epsilon_out)) pass = false;
      absl::StrAppendFormat(&detail, "%s(eps0=%g,n=%g: %.3g<%.3g)",
                            detail.empty() ? "" : " ", eps0, n,
                            net->epsilon_out, loc->epsilon_out);
    }
  }
  return {pass, detail};
}

Outcome AmplificationSlope() {
  bool pass = true;
  std::string detail;
  for (double eps0 : {0.5, 1.0}) {
    std::vector<double> xs, ys;
    for (double n : {1e2, 1e3, 1e4, 1e5}) {
      auto net = CompleteSumBound(GraphParams(eps0, n));
      auto loc = LocalBaselineSum(GraphParams(eps0, n));
      if (!net.ok() || !loc.ok()) return {false, "bound evaluation failed"};
      xs.push_back(std::log(n));
      ys.push_back(std::log(net->epsilon_out / loc->epsilon_out));
    }
    const double mx = Mean(xs), my = Mean(ys);
    double sxy = 0.0, sxx = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    const double slope = sxy / sxx;
    if (!(slope >= -0.6 && slope <= -0.4)) pass = false;
    absl::StrAppendFormat(&detail, "%sslope(eps0=%g)=%.4f",
                          detail.empty() ? "" : " ", eps0, slope);
  }
  return {pass, detail};
}

Outcome EmpiricalBeatsTheory() {
  const EmpiricalParams params{0.5, 1e-6, 1e-3};
  bool pass = true;
  std::string detail;
  for (int64_t n : {20, 100, 1000}) {
    std::vector<double> worst;
    double pair_sum = 0.0;
    int64_t pairs = 0;
    double max_delta = 0.0;
    for (int64_t r = 0; r < 10; ++r) {
      auto walk = SampleWalk(Topology{TopologyKind::kComplete, n}, 100 * n,
                             DeriveSeed(DeriveSeed(kSeed, n), r));
      if (!walk.ok()) return {false, walk.status().ToString()};
      auto m = EmpiricalPairLossSum(*walk, params);
      if (!m.ok()) return {false, m.status().ToString()};
      max_delta = std::max(max_delta, m->MaxDelta());
      auto stats = EmpiricalSummary(std::span<const PairLossMatrix>(&*m, 1));
      if (!stats.ok()) return {false, stats.status().ToString()};
      worst.push_back(stats->max);
      pair_sum += stats->mean * static_cast<double>(stats->pairs);
      pairs += stats->pairs;
    }
    auto theory = CompleteSumBound(GraphParams(0.5, static_cast<double>(n)));
    if (!theory.ok()) return {false, theory.status().ToString()};
    const double bound = theory->epsilon_out;
    const double max = *std::max_element(worst.begin(), worst.end());
    const double mean = Mean(worst);
    if (!(max <= bound)) pass = false;
    if (n == 1000 && !(mean <= 0.5 * bound)) pass = false;
    absl::StrAppendFormat(
        &detail, "%sn=%d: worst-pair max=%.4f mean=%.4f pair_mean=%.4f "
                 "theory=%.4f mean/theory=%.3f delta_emp<=%.2e "
                 "delta_theory=%.2e",
        detail.empty() ? "" : "; ", n, max, mean,
        pair_sum / static_cast<double>(pairs), bound, mean / bound, max_delta,
        theory->delta_out);
  }
  return {pass, detail};
}

Outcome ChernoffCoverage() {
  const int64_t n = 50, length = 5000, walks = 10000;
  const double delta_hat = 0.05;
  auto bound = ChernoffVisitBound(length, 1.0 / n, delta_hat);
  if (!bound.ok()) return {false, bound.status().ToString()};
  std::vector<int64_t> exceed(n, 0);
  for (int64_t r = 0; r < walks; ++r) {
    auto walk = SampleWalk(Topology{TopologyKind::kComplete, n}, length,
                           DeriveSeed(kSeed, r));
    if (!walk.ok()) return {false, walk.status().ToString()};
    const std::vector<int64_t> counts = VisitCounts(*walk);
    for (int64_t v = 0; v < n; ++v) {
      if (static_cast<double>(counts[v]) >= *bound) ++exceed[v];
    }
  }
  const double worst =
      static_cast<double>(*std::max_element(exceed.begin(), exceed.end())) /
      walks;
  return {worst <= delta_hat,
          absl::StrFormat("N_v=%.3f worst_fraction=%.5f limit=%.2f", *bound,
                          worst, delta_hat)};
}

struct HistCheck {
  bool pass = true;
  std::string detail;
};

// Accumulates debiased-minus-truth errors and random-response counts.
template <typename RunFn>
HistCheck CheckHistogram(absl::string_view label, int64_t runs,
                         int32_t domain, double expected_rr, RunFn run) {
  std::vector<double> sum(domain, 0.0), sum2(domain, 0.0);
  double rr = 0.0;
  for (int64_t r = 0; r < runs; ++r) {
    absl::StatusOr<ProtocolResult> res = run(DeriveSeed(kSeed, r));
    if (!res.ok()) return {false, res.status().ToString()};
    const auto& truth = std::get<std::vector<int64_t>>(res->true_value);
    for (int32_t i = 0; i < domain; ++i) {
      const double e = res->debiased[i] - static_cast<double>(truth[i]);
      sum[i] += e;
      sum2[i] += e * e;
    }
    rr += static_cast<double>(res->random_responses);
  }
  HistCheck out;
  double worst_z = 0.0;
  for (int32_t i = 0; i < domain; ++i) {
    const double mean = sum[i] / runs;
    const double se = std::sqrt((sum2[i] / runs - mean * mean) / runs);
    worst_z = std::max(worst_z, std::fabs(mean) / se);
  }
  const double rr_rel = std::fabs(rr / runs / expected_rr - 1.0);
  out.pass = worst_z <= 3.0 && rr_rel <= 0.02;
  out.detail = absl::StrFormat("%s: max|z|=%.3f rr=%.1f expected=%.1f "
                               "rel=%.4f",
                               label, worst_z, rr / runs, expected_rr, rr_rel);
  return out;
}

Outcome HistogramUnbiased() {
  const int64_t n = 500, k = 20, runs = 10000;
  const int32_t domain = 5;
  const double gamma = 0.3;
  const CategoryStream stream =
      WeightedCategoryStream(kSeed, {5.0, 3.0, 1.0, 0.5, 0.5});
  const HistCheck ring =
      CheckHistogram("ring", runs, domain, gamma * n * (k + 1),
                     [&](uint64_t seed) {
                       return RunRingHist(n, k, stream, gamma, seed);
                     });
  const HistCheck complete =
      CheckHistogram("complete", runs, domain, gamma * n * k,
                     [&](uint64_t seed) {
                       return RunCompleteHist(n, n * k, stream, gamma, seed);
                     });
  return {ring.pass && complete.pass,
          absl::StrCat(ring.detail, "; ", complete.detail)};
}

Outcome RdpChain() {
  bool pass = true;
  std::string detail;
  for (double n : {2.0, 10.0, 100.0, 1000.0}) {
    int64_t terms = 1;
    double previous = -1.0;
    double sum = GeometricIterationSum(n, terms);
    while (sum - previous > 1e-12) {
      previous = sum;
      terms *= 2;
      sum = GeometricIterationSum(n, terms);
    }
    const double limit = std::log(n) / n;
    if (!(sum <= limit)) pass = false;
    absl::StrAppendFormat(&detail, "n=%g: sum=%.15f ln(n)/n=%.15f terms=%d; ",
                          n, sum, limit, terms);
  }
  double worst = 0.0;
  for (double alpha : {1.5, 2.0, 8.0, 32.0}) {
    for (double eps_rdp : {0.01, 0.5, 3.0}) {
      for (double delta : {1e-9, 1e-5, 1e-2}) {
        auto dp = RdpToDp({alpha, eps_rdp}, delta);
        if (!dp.ok()) return {false, dp.status().ToString()};
        const double formula = eps_rdp + std::log(1.0 / delta) / (alpha - 1.0);
        const double back = *dp - std::log(1.0 / delta) / (alpha - 1.0);
        worst = std::max({worst, std::fabs(*dp - formula),
                          std::fabs(back - eps_rdp)});
      }
    }
  }
  if (!(worst <= 1e-12)) pass = false;
  absl::StrAppendFormat(&detail, "rdp_to_dp max round-trip error=%.3g", worst);
  return {pass, detail};
}

Outcome SigmaOrdering() {
  RegimeSetup setup;
  setup.budget = {1.0, 1e-6};
  setup.n = 2000;
  setup.length = 20000;
  setup.cap_multiplier = 2.0;
  double sigma[3];
  std::string detail;
  int i = 0;
  for (Regime r : {Regime::kCentralized, Regime::kNetwork, Regime::kLocal}) {
    setup.regime = r;
    auto c = CalibrateRegime(setup);
    if (!c.ok()) return {false, c.status().ToString()};
    sigma[i++] = c->sigma;
    absl::StrAppendFormat(&detail, "%s%s=%.4f(%s)", detail.empty() ? "" : " ",
                          RegimeName(r), c->sigma, c->route);
  }
  return {sigma[0] < sigma[1] && sigma[1] < sigma[2], detail};
}

Outcome SgdOrdering() {
  const int64_t n = 200, runs = 20;
  SyntheticOptions synth;
  synth.rows = 2000;
  synth.dimension = 20;
  auto raw = GenerateSynthetic(synth, kSeed);
  if (!raw.ok()) return {false, raw.status().ToString()};
  auto data = Preprocess(*raw, PreprocessOptions{n, 0.8}, DeriveSeed(kSeed, 1));
  if (!data.ok()) return {false, data.status().ToString()};
  const std::vector<double> etas = EtaGrid();

  // Reference optimum: best noiseless run over the same step-size grid.
  double reference = std::numeric_limits<double>::infinity();
  for (double eta : etas) {
    TrainConfig config;
    config.setup.regime = Regime::kCentralized;
    config.setup.n = n;
    config.setup.length = 2000;
    config.eta = eta;
    config.seed = kSeed;
    auto r = Train(config, data->train, data->test, 0.0);
    if (!r.ok()) return {false, r.status().ToString()};
    if (!r->diverged) reference = std::min(reference, r->final_objective);
  }

  bool pass = true;
  std::string detail = absl::StrFormat("F_ref=%.4f", reference);
  for (double eps : {1.0, 10.0}) {
    double objective[3];
    int64_t diverged[3];
    double initial = 0.0;
    int i = 0;
    for (Regime regime :
         {Regime::kCentralized, Regime::kNetwork, Regime::kLocal}) {
      RegimeSetup setup{regime, PrivacyBudget{eps, 1e-6}, n, 2000, 2.0, 1.0};
      auto summary =
          TuneAndTrain(setup, *data, etas, runs, DeriveSeed(kSeed, 2), 1);
      if (!summary.ok()) return {false, summary.status().ToString()};
      objective[i] = summary->MeanObjective();
      diverged[i] = summary->diverged_runs;
      initial = summary->initial_objective;
      ++i;
    }
    const bool ordered =
        objective[0] <= objective[1] && objective[1] <= objective[2];
    if (!ordered) pass = false;
    absl::StrAppendFormat(&detail, "; eps=%g: C=%.4f N=%.4f L=%.4f F0=%.4f",
                          eps, objective[0], objective[1], objective[2],
                          initial);
    if (eps == 1.0) {
      const double gap_ratio =
          (objective[2] - reference) / (objective[1] - reference);
      const bool local_fails =
          diverged[2] > 0 || objective[2] > initial || gap_ratio >= 2.0;
      if (!local_fails) pass = false;
      absl::StrAppendFormat(&detail,
                            " local_diverged_runs=%d local_above_F0=%s "
                            "gap_ratio_L/N=%.3f",
                            diverged[2], objective[2] > initial ? "yes" : "no",
                            gap_ratio);
    }
  }
  return {pass, detail};
}

// Spearman rank correlation with average ranks for ties.
std::vector<double> Ranks(const std::vector<double>& xs) {
  std::vector<size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  for (size_t i = 0; i < order.size();) {
    size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

double Pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double ma = Mean(a), mb = Mean(b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

Outcome SpottedTrend() {
  const int64_t n = 100, seeds = 20;
  const EmpiricalParams params{0.5, 1e-6, 1e-3};
  const std::vector<int64_t> lengths = {100, 200, 500, 1000, 2000, 5000, 10000};
  std::vector<double> xs, ys, means;
  for (int64_t length : lengths) {
    std::vector<double> shares;
    for (int64_t r = 0; r < seeds; ++r) {
      auto walk = SampleWalk(Topology{TopologyKind::kComplete, n}, length,
                             DeriveSeed(DeriveSeed(kSeed, length), r));
      if (!walk.ok()) return {false, walk.status().ToString()};
      auto loss =
          EmpiricalPairLossSpotted(*walk, params, CompositionMode::kAdvanced);
      if (!loss.ok()) return {false, loss.status().ToString()};
      double best = -1.0, share = 0.0;
      for (int64_t u = 1; u <= n; ++u) {
        for (int64_t v = 1; v <= n; ++v) {
          if (u == v) continue;
          const double total = loss->total.epsilon(u, v);
          if (total > best) {
            best = total;
            share = total > 0.0 ? loss->spotted.epsilon(u, v) / total : 0.0;
          }
        }
      }
      shares.push_back(share);
      xs.push_back(static_cast<double>(length));
      ys.push_back(share);
    }
    means.push_back(Mean(shares));
  }
  const double rho = Pearson(Ranks(xs), Ranks(ys));
  const double df = static_cast<double>(xs.size()) - 2.0;
  const double t = rho * std::sqrt(df / std::max(1e-300, 1.0 - rho * rho));
  const double p =
      2.0 * boost::math::cdf(boost::math::complement(
                boost::math::students_t(df), std::fabs(t)));
  bool monotone = true;
  std::string trend;
  for (size_t i = 0; i < means.size(); ++i) {
    if (i > 0 && means[i] > means[i - 1]) monotone = false;
    absl::StrAppendFormat(&trend, "%sT=%d:%.4f", i ? " " : "", lengths[i],
                          means[i]);
  }
  return {rho < 0.0 && p < 0.01,
          absl::StrFormat("spearman=%.4f p=%.3g samples=%d means_monotone=%s "
                          "[%s]",
                          rho, p, xs.size(), monotone ? "yes" : "no", trend)};
}

// Small but non-trivial settings so every experiment runs twice quickly.
std::string DeterminismConfig(absl::string_view name) {
  if (name == "empirical_sweep") return "n_grid = 20, 100\nruns = 3\n";
  if (name == "protocol_mc") {
    return "runs = 200\nhist_n = 100\nhist_k = 5\ncomplete_t = 2000\n";
  }
  if (name == "sgd_compare") return "n = 50\nT = 500\nruns = 3\n";
  return "";
}

Outcome Determinism() {
  bool pass = true;
  std::string detail;
  for (absl::string_view name : ExperimentNames()) {
    std::string first;
    bool same = true;
    for (int attempt = 0; attempt < 2; ++attempt) {
      auto config = Config::Parse(DeterminismConfig(name));
      if (!config.ok()) return {false, config.status().ToString()};
      ExperimentOptions options;
      options.seed = kSeed;
      options.workers = attempt + 1;
      auto out = RunExperiment(name, *config, options);
      if (!out.ok()) return {false, absl::StrCat(name, ": ", out.status().ToString())};
      std::string bytes = out->csv;
      for (const auto& [file, contents] : out->files) {
        absl::StrAppend(&bytes, "\n--", file, "--\n", contents);
      }
      if (attempt == 0) {
        first = std::move(bytes);
      } else {
        same = first == bytes;
      }
    }
    if (!same) pass = false;
    absl::StrAppend(&detail, detail.empty() ? "" : " ", name, "=",
                    same ? "identical" : "DIFFERENT");
  }
  return {pass, detail};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> check;
};

}  // namespace
}  // namespace netdp

int main() {
  using netdp::Criterion;
  const std::vector<Criterion> criteria = {
      {1, "ring_sum_variance", netdp::RingSumVariance},
      {2, "ring_audit", netdp::RingAuditPrecondition},
      {3, "cycle_bound_domination", netdp::CycleDomination},
      {4, "network_beats_local", netdp::Crossover},
      {5, "amplification_slope", netdp::AmplificationSlope},
      {6, "empirical_below_theory", netdp::EmpiricalBeatsTheory},
      {7, "chernoff_coverage", netdp::ChernoffCoverage},
      {8, "histogram_unbiased", netdp::HistogramUnbiased},
      {9, "rdp_chain", netdp::RdpChain},
      {10, "sigma_ordering", netdp::SigmaOrdering},
      {11, "sgd_ordering", netdp::SgdOrdering},
      {12, "spotted_trend", netdp::SpottedTrend},
      {13, "determinism", netdp::Determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    const netdp::Outcome outcome = c.check();
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    if (!outcome.pass) ++failures;
    std::printf("%s %2d %s (%.1fs): %s\n", outcome.pass ? "PASS" : "FAIL", c.id,
                c.name, seconds, outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
