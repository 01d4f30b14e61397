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

#include "netdp/experiments.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "netdp/accountant.h"
#include "netdp/bound_report.h"
#include "netdp/core.h"
#include "netdp/dpml.h"
#include "netdp/empirical.h"
#include "netdp/internal/parallel.h"
#include "netdp/internal/status_macros.h"
#include "netdp/protocols.h"
#include "netdp/rdp.h"
#include "netdp/rng.h"

namespace netdp {
namespace {

using Json = nlohmann::ordered_json;

Json BaseMeta(absl::string_view name, const ExperimentOptions& options,
              int64_t runs) {
  Json meta;
  meta["experiment"] = name;
  meta["version"] = NETDP_VERSION;
  meta["seed"] = options.seed;
  meta["runs"] = runs;
  meta["unchecked"] = options.unchecked;
  meta["user_index_base"] = 0;
  return meta;
}

absl::StatusOr<int64_t> ResolveRuns(Config& config,
                                    const ExperimentOptions& options,
                                    int64_t fallback) {
  NETDP_ASSIGN_OR_RETURN(int64_t runs, config.GetInt("runs", fallback));
  if (options.runs > 0) runs = options.runs;
  if (runs < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("runs must be >= 1, got ", runs));
  }
  return runs;
}

struct Moments {
  double mean = 0.0;
  double sd = 0.0;
};

Moments ComputeMoments(const std::vector<double>& xs) {
  Moments m;
  if (xs.empty()) return m;
  for (double x : xs) m.mean += x;
  m.mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return m;
  double ss = 0.0;
  for (double x : xs) ss += (x - m.mean) * (x - m.mean);
  m.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  return m;
}

std::string Fmt(double v) { return FormatDouble(v); }

// One row of protocol_mc output.
struct CheckRow {
  std::string protocol;
  std::string metric;
  double estimate = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool relative = true;

  bool within() const {
    if (relative) {
      return std::fabs(estimate / expected - 1.0) <= tolerance;
    }
    return std::fabs(estimate - expected) <= tolerance;
  }
};

double ScalarOf(const Token& t) { return std::get<double>(t); }

// FNV-1a, so stream tags map to the same seeds on every platform.
uint64_t TagHash(absl::string_view tag) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::vector<absl::string_view> ExperimentNames() {
  return {"bounds_sweep", "empirical_sweep", "protocol_mc", "sgd_compare",
          "sigma_search"};
}

absl::StatusOr<DeltaSplit> ResolveDeltaSplit(Config& config) {
  NETDP_ASSIGN_OR_RETURN(double total, config.GetDouble("delta_total", 3e-3));
  if (!(total > 0.0 && total < 1.0)) {
    return absl::InvalidArgumentError("delta_total must lie in (0, 1)");
  }
  DeltaSplit split;
  NETDP_ASSIGN_OR_RETURN(split.delta_prime,
                         config.GetDouble("delta_prime", total / 3.0));
  NETDP_ASSIGN_OR_RETURN(split.delta_hat,
                         config.GetDouble("delta_hat", total / 3.0));
  NETDP_ASSIGN_OR_RETURN(split.delta_tilde,
                         config.GetDouble("delta_tilde", total / 3.0));
  return split;
}

absl::StatusOr<ExperimentOutput> BoundsSweep(
    Config& config, const ExperimentOptions& options) {
  NETDP_ASSIGN_OR_RETURN(
      std::vector<int64_t> grid,
      config.GetIntList("n_grid", "10,20,50,100,200,500,1000,2000,5000,10000"));
  NETDP_ASSIGN_OR_RETURN(double eps0, config.GetDouble("eps0", 0.5));
  NETDP_ASSIGN_OR_RETURN(double delta0, config.GetDouble("delta0", 1e-6));
  NETDP_ASSIGN_OR_RETURN(double t_factor, config.GetDouble("t_factor", 100));
  NETDP_ASSIGN_OR_RETURN(int64_t colluders, config.GetInt("colluders", 1));
  NETDP_ASSIGN_OR_RETURN(DeltaSplit split, ResolveDeltaSplit(config));
  NETDP_RETURN_IF_ERROR(config.CheckAllUsed());
  if (grid.empty()) return absl::InvalidArgumentError("n_grid is empty");

  std::string csv =
      "n,network_eps,local_eps,network_fixed_eps,local_fixed_eps";
  if (options.unchecked) csv += ",unchecked";
  csv += "\n";
  for (int64_t n : grid) {
    CompleteGraphParams p;
    p.epsilon = eps0;
    p.delta = delta0;
    p.n = static_cast<double>(n);
    p.length = t_factor * static_cast<double>(n);
    p.delta_prime = split.delta_prime;
    p.delta_hat = split.delta_hat;
    p.colluders = colluders;
    p.validity = options.unchecked ? Validity::kUnchecked : Validity::kChecked;
    NETDP_ASSIGN_OR_RETURN(BoundReport network, CompleteSumBound(p));
    NETDP_ASSIGN_OR_RETURN(BoundReport local, LocalBaselineSum(p));
    p.visits = VisitBound::kFixed;
    NETDP_ASSIGN_OR_RETURN(BoundReport network_fixed, CompleteSumBound(p));
    NETDP_ASSIGN_OR_RETURN(BoundReport local_fixed, LocalBaselineSum(p));
    absl::StrAppend(&csv, n, ",", Fmt(network.epsilon_out), ",",
                    Fmt(local.epsilon_out), ",",
                    Fmt(network_fixed.epsilon_out), ",",
                    Fmt(local_fixed.epsilon_out));
    if (options.unchecked) {
      absl::StrAppend(&csv, ",",
                      network.outside_validity || network_fixed.outside_validity
                          ? "true"
                          : "false");
    }
    csv += "\n";
  }
  ExperimentOutput out;
  out.csv = std::move(csv);
  out.meta = BaseMeta("bounds_sweep", options, 1);
  out.meta["config"] = config.resolved();
  return out;
}

absl::StatusOr<ExperimentOutput> EmpiricalSweep(
    Config& config, const ExperimentOptions& options) {
  NETDP_ASSIGN_OR_RETURN(std::vector<int64_t> grid,
                         config.GetIntList("n_grid", "20,50,100,200,500"));
  NETDP_ASSIGN_OR_RETURN(double eps0, config.GetDouble("eps0", 0.5));
  NETDP_ASSIGN_OR_RETURN(double delta0, config.GetDouble("delta0", 1e-6));
  NETDP_ASSIGN_OR_RETURN(double t_factor, config.GetDouble("t_factor", 100));
  NETDP_ASSIGN_OR_RETURN(DeltaSplit split, ResolveDeltaSplit(config));
  NETDP_ASSIGN_OR_RETURN(int64_t runs, ResolveRuns(config, options, 10));
  NETDP_RETURN_IF_ERROR(config.CheckAllUsed());
  if (grid.empty()) return absl::InvalidArgumentError("n_grid is empty");

  const EmpiricalParams params{eps0, delta0, split.delta_prime};
  std::string csv = "n,mean,min,max,pair_mean,theory_eps,walks_over_nv\n";
  double max_delta = 0.0;
  for (int64_t n : grid) {
    if (n < 2) return absl::InvalidArgumentError("empirical sweep needs n >= 2");
    const auto length = static_cast<int64_t>(t_factor * static_cast<double>(n));
    CompleteGraphParams p;
    p.epsilon = eps0;
    p.delta = delta0;
    p.n = static_cast<double>(n);
    p.length = static_cast<double>(length);
    p.delta_prime = split.delta_prime;
    p.delta_hat = split.delta_hat;
    p.validity = options.unchecked ? Validity::kUnchecked : Validity::kChecked;
    NETDP_ASSIGN_OR_RETURN(BoundReport theory, CompleteSumBound(p));
    const double n_v = theory.intermediate("N_v");

    std::vector<absl::StatusOr<EmpiricalStats>> stats(runs);
    std::vector<double> deltas(runs, 0.0);
    std::vector<int> over(runs, 0);
    internal::ParallelFor(runs, options.workers, [&](int64_t r) {
      const uint64_t seed =
          DeriveSeed(DeriveSeed(options.seed, static_cast<uint64_t>(n)), r);
      auto walk = SampleWalk(Topology{TopologyKind::kComplete, n}, length, seed);
      if (!walk.ok()) {
        stats[r] = walk.status();
        return;
      }
      for (int64_t c : VisitCounts(*walk)) {
        if (static_cast<double>(c) > n_v) over[r] = 1;
      }
      auto matrix = EmpiricalPairLossSum(*walk, params);
      if (!matrix.ok()) {
        stats[r] = matrix.status();
        return;
      }
      deltas[r] = matrix->MaxDelta();
      stats[r] = EmpiricalSummary(std::span<const PairLossMatrix>(&*matrix, 1));
    });
    // Each walk contributes its worst-case pair; pair_mean pools all pairs.
    double worst_sum = 0.0;
    double worst_min = std::numeric_limits<double>::infinity();
    double worst_max = -std::numeric_limits<double>::infinity();
    double pair_sum = 0.0;
    int64_t pairs = 0;
    int64_t walks_over = 0;
    for (int64_t r = 0; r < runs; ++r) {
      if (!stats[r].ok()) return stats[r].status();
      worst_sum += stats[r]->max;
      worst_min = std::min(worst_min, stats[r]->max);
      worst_max = std::max(worst_max, stats[r]->max);
      pair_sum += stats[r]->mean * static_cast<double>(stats[r]->pairs);
      pairs += stats[r]->pairs;
      max_delta = std::max(max_delta, deltas[r]);
      walks_over += over[r];
    }
    absl::StrAppend(&csv, n, ",", Fmt(worst_sum / static_cast<double>(runs)),
                    ",", Fmt(worst_min), ",", Fmt(worst_max), ",",
                    Fmt(pair_sum / static_cast<double>(pairs)), ",",
                    Fmt(theory.epsilon_out), ",", walks_over, "\n");
  }
  ExperimentOutput out;
  out.csv = std::move(csv);
  out.meta = BaseMeta("empirical_sweep", options, runs);
  out.meta["config"] = config.resolved();
  out.meta["delta_accounting"] =
      "per pair: pieces * delta0 + delta_prime; max reported below";
  out.meta["max_pair_delta"] = max_delta;
  return out;
}

absl::StatusOr<ExperimentOutput> ProtocolMonteCarlo(
    Config& config, const ExperimentOptions& options) {
  const std::string which = config.GetString("protocol", "all");
  NETDP_ASSIGN_OR_RETURN(int64_t runs, ResolveRuns(config, options, 1000));
  NETDP_ASSIGN_OR_RETURN(int64_t ring_n, config.GetInt("ring_n", 100));
  NETDP_ASSIGN_OR_RETURN(int64_t ring_k, config.GetInt("ring_k", 10));
  NETDP_ASSIGN_OR_RETURN(double sigma, config.GetDouble("sigma_loc", 1.0));
  NETDP_ASSIGN_OR_RETURN(int64_t hist_n, config.GetInt("hist_n", 500));
  NETDP_ASSIGN_OR_RETURN(int64_t hist_k, config.GetInt("hist_k", 20));
  NETDP_ASSIGN_OR_RETURN(int64_t domain, config.GetInt("domain_size", 5));
  NETDP_ASSIGN_OR_RETURN(double gamma, config.GetDouble("gamma", 0.3));
  NETDP_ASSIGN_OR_RETURN(int64_t complete_n, config.GetInt("complete_n", 100));
  NETDP_ASSIGN_OR_RETURN(int64_t complete_t,
                         config.GetInt("complete_t", 10000));
  NETDP_ASSIGN_OR_RETURN(double tol_std, config.GetDouble("std_tolerance", 0.03));
  NETDP_ASSIGN_OR_RETURN(double tol_rr, config.GetDouble("rr_tolerance", 0.02));
  NETDP_RETURN_IF_ERROR(config.CheckAllUsed());
  const std::vector<std::string> known = {"ring_sum", "ring_sum_distributed",
                                          "ring_hist", "complete_sum",
                                          "complete_hist"};
  if (which != "all" &&
      std::find(known.begin(), known.end(), which) == known.end()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "unknown protocol '", which, "', expected all or one of ",
        absl::StrJoin(known, ", ")));
  }
  if (domain < 2 || domain > INT32_MAX) {
    return absl::InvalidArgumentError("domain_size must be >= 2");
  }
  auto wanted = [&](absl::string_view p) { return which == "all" || which == p; };

  // Contributions are fixed across runs; only the protocol randomness moves.
  const uint64_t data_seed = DeriveSeed(options.seed, 0xC0FFEE);
  const ScalarStream scalars = UniformScalarStream(data_seed);
  std::vector<double> weights(domain);
  for (int64_t i = 0; i < domain; ++i) weights[i] = static_cast<double>(i + 1);
  const CategoryStream categories =
      WeightedCategoryStream(data_seed, std::move(weights));
  auto run_seed = [&](absl::string_view tag, int64_t r) {
    return DeriveSeed(DeriveSeed(options.seed, TagHash(tag)),
                      static_cast<uint64_t>(r));
  };

  std::vector<CheckRow> rows;
  auto sum_rows = [&](absl::string_view name, auto run, double expected_sd) -> absl::Status {
    std::vector<absl::StatusOr<ProtocolResult>> results(runs);
    internal::ParallelFor(runs, options.workers, [&](int64_t r) {
      results[r] = run(sigma, run_seed(name, r));
    });
    std::vector<double> errors;
    errors.reserve(runs);
    int64_t events = 0;
    for (auto& r : results) {
      if (!r.ok()) return r.status();
      errors.push_back(ScalarOf(r->output) - ScalarOf(r->true_value));
      events = static_cast<int64_t>(r->noise_events.size());
    }
    const Moments m = ComputeMoments(errors);
    rows.push_back({std::string(name), "std_error", m.sd, expected_sd, tol_std});
    if (name == "ring_sum") {
      rows.push_back({std::string(name), "std_scheduled", m.sd,
                      std::sqrt(static_cast<double>(events)) * sigma, tol_std});
    }
    NETDP_ASSIGN_OR_RETURN(ProtocolResult exact, run(0.0, run_seed(name, -1)));
    rows.push_back({std::string(name), "noiseless_abs_error",
                    std::fabs(ScalarOf(exact.output) - ScalarOf(exact.true_value)),
                    0.0, 1e-9, false});
    return absl::OkStatus();
  };
  auto hist_rows = [&](absl::string_view name, auto run,
                       double expected_rr) -> absl::Status {
    std::vector<absl::StatusOr<ProtocolResult>> results(runs);
    internal::ParallelFor(runs, options.workers, [&](int64_t r) {
      results[r] = run(run_seed(name, r));
    });
    std::vector<std::vector<double>> errors(domain);
    std::vector<double> responses;
    for (auto& r : results) {
      if (!r.ok()) return r.status();
      const auto& truth = std::get<std::vector<int64_t>>(r->true_value);
      for (int64_t i = 0; i < domain; ++i) {
        errors[i].push_back(r->debiased[i] - static_cast<double>(truth[i]));
      }
      responses.push_back(static_cast<double>(r->random_responses));
    }
    for (int64_t i = 0; i < domain; ++i) {
      const Moments m = ComputeMoments(errors[i]);
      const double se = m.sd / std::sqrt(static_cast<double>(runs));
      rows.push_back({std::string(name), absl::StrCat("bin", i + 1, "_z"),
                      se > 0.0 ? m.mean / se : 0.0, 0.0, 3.0, false});
    }
    rows.push_back({std::string(name), "random_responses",
                    ComputeMoments(responses).mean, expected_rr, tol_rr});
    return absl::OkStatus();
  };

  const double ring_events = std::floor(static_cast<double>(ring_k * ring_n) /
                                        static_cast<double>(ring_n - 1));
  if (wanted("ring_sum")) {
    NETDP_RETURN_IF_ERROR(sum_rows(
        "ring_sum",
        [&](double s, uint64_t seed) {
          return RunRingSum(ring_n, ring_k, scalars, s,
                            RingNoiseMode::kSingleNoiser, seed);
        },
        std::sqrt(ring_events) * sigma));
  }
  if (wanted("ring_sum_distributed")) {
    NETDP_RETURN_IF_ERROR(sum_rows(
        "ring_sum_distributed",
        [&](double s, uint64_t seed) {
          return RunRingSum(ring_n, ring_k, scalars, s,
                            RingNoiseMode::kDistributed, seed);
        },
        std::sqrt(ring_events + 1.0) * sigma));
  }
  if (wanted("complete_sum")) {
    NETDP_RETURN_IF_ERROR(sum_rows(
        "complete_sum",
        [&](double s, uint64_t seed) {
          return RunCompleteSum(complete_n, complete_t, scalars, s, seed);
        },
        std::sqrt(static_cast<double>(complete_t)) * sigma));
  }
  if (wanted("ring_hist")) {
    NETDP_RETURN_IF_ERROR(hist_rows(
        "ring_hist",
        [&](uint64_t seed) {
          return RunRingHist(hist_n, hist_k, categories, gamma, seed);
        },
        gamma * static_cast<double>(hist_n) * static_cast<double>(hist_k + 1)));
  }
  if (wanted("complete_hist")) {
    const int64_t length = hist_n * hist_k;
    NETDP_RETURN_IF_ERROR(hist_rows(
        "complete_hist",
        [&](uint64_t seed) {
          return RunCompleteHist(hist_n, length, categories, gamma, seed);
        },
        gamma * static_cast<double>(length)));
  }

  std::string csv = "protocol,metric,estimate,expected,tolerance,within\n";
  for (const CheckRow& row : rows) {
    absl::StrAppend(&csv, row.protocol, ",", row.metric, ",", Fmt(row.estimate),
                    ",", Fmt(row.expected), ",", Fmt(row.tolerance), ",",
                    row.within() ? "true" : "false", "\n");
  }
  ExperimentOutput out;
  out.csv = std::move(csv);
  out.meta = BaseMeta("protocol_mc", options, runs);
  out.meta["config"] = config.resolved();
  out.meta["tolerance_kind"] =
      "std and random_responses rows are relative; z and noiseless rows are "
      "absolute";
  return out;
}

absl::StatusOr<ExperimentOutput> SgdCompare(Config& config,
                                            const ExperimentOptions& options) {
  const std::string dataset = config.GetString("dataset", "synthetic");
  NETDP_ASSIGN_OR_RETURN(int64_t n, config.GetInt("n", 200));
  NETDP_ASSIGN_OR_RETURN(int64_t per_user, config.GetInt("points_per_user", 8));
  NETDP_ASSIGN_OR_RETURN(int64_t dimension, config.GetInt("dimension", 20));
  NETDP_ASSIGN_OR_RETURN(double separation, config.GetDouble("separation", 2.0));
  NETDP_ASSIGN_OR_RETURN(int64_t length, config.GetInt("T", 2000));
  NETDP_ASSIGN_OR_RETURN(std::vector<double> epsilons,
                         config.GetDoubleList("epsilons", "1,10"));
  NETDP_ASSIGN_OR_RETURN(double delta, config.GetDouble("delta", 1e-6));
  NETDP_ASSIGN_OR_RETURN(double cap, config.GetDouble("cap", 2.0));
  const std::string regimes_text =
      config.GetString("regimes", "centralized,network,local");
  NETDP_ASSIGN_OR_RETURN(std::vector<double> etas,
                         config.GetDoubleList("eta", ""));
  NETDP_ASSIGN_OR_RETURN(int64_t runs, ResolveRuns(config, options, 20));
  NETDP_RETURN_IF_ERROR(config.CheckAllUsed());
  if (etas.empty()) etas = EtaGrid();
  if (epsilons.empty()) return absl::InvalidArgumentError("no epsilons given");
  std::vector<Regime> regimes;
  for (absl::string_view name : absl::StrSplit(regimes_text, ',', absl::SkipWhitespace())) {
    NETDP_ASSIGN_OR_RETURN(Regime r, ParseRegime(absl::StripAsciiWhitespace(name)));
    regimes.push_back(r);
  }
  if (n < 2 || per_user < 1) {
    return absl::InvalidArgumentError("need n >= 2 and points_per_user >= 1");
  }

  Dataset raw;
  if (dataset == "synthetic") {
    SyntheticOptions synth;
    synth.rows = static_cast<int64_t>(
        std::ceil(static_cast<double>(n * per_user) / 0.8));
    synth.dimension = dimension;
    synth.separation = separation;
    NETDP_ASSIGN_OR_RETURN(raw, GenerateSynthetic(synth, options.seed));
  } else {
    NETDP_ASSIGN_OR_RETURN(raw, LoadDatasetCsv(dataset));
  }
  NETDP_ASSIGN_OR_RETURN(
      PreparedData data,
      Preprocess(raw, PreprocessOptions{n, 0.8}, DeriveSeed(options.seed, 1)));

  ExperimentOutput out;
  std::string csv =
      "epsilon,regime,sigma,alpha,route,eta,mean_objective,std_objective,"
      "mean_accuracy,std_accuracy,diverged_runs,initial_objective,"
      "contribution_bound\n";
  for (double eps : epsilons) {
    for (Regime regime : regimes) {
      RegimeSetup setup{regime, PrivacyBudget{eps, delta}, n, length, cap, 1.0};
      NETDP_ASSIGN_OR_RETURN(
          RegimeSummary summary,
          TuneAndTrain(setup, data, etas, runs, DeriveSeed(options.seed, 2),
                       options.workers));
      const Moments obj = ComputeMoments(summary.final_objectives);
      const Moments acc = ComputeMoments(summary.final_accuracies);
      absl::StrAppend(&csv, Fmt(eps), ",", RegimeName(regime), ",",
                      Fmt(summary.calibration.sigma), ",",
                      Fmt(summary.calibration.alpha), ",",
                      summary.calibration.route, ",", Fmt(summary.eta), ",",
                      Fmt(obj.mean), ",", Fmt(obj.sd), ",", Fmt(acc.mean), ",",
                      Fmt(acc.sd), ",", summary.diverged_runs, ",",
                      Fmt(summary.initial_objective), ",",
                      summary.calibration.contribution_bound, "\n");
      std::string trace =
          "step,objective,test_accuracy,objective_std,test_accuracy_std\n";
      for (size_t i = 0; i < summary.mean_trace.size(); ++i) {
        const TracePoint& m = summary.mean_trace[i];
        const TracePoint& s = summary.std_trace[i];
        absl::StrAppend(&trace, m.step, ",", Fmt(m.objective), ",",
                        Fmt(m.test_accuracy), ",", Fmt(s.objective), ",",
                        Fmt(s.test_accuracy), "\n");
      }
      out.files.emplace_back(
          absl::StrCat("trace_", RegimeName(regime), "_eps", Fmt(eps), ".csv"),
          std::move(trace));
    }
  }
  out.csv = std::move(csv);
  out.meta = BaseMeta("sgd_compare", options, runs);
  out.meta["config"] = config.resolved();
  out.meta["train_rows"] = data.train.rows();
  out.meta["test_rows"] = data.test.rows();
  out.meta["warnings"] = data.warnings;
  return out;
}

absl::StatusOr<ExperimentOutput> SigmaSearchExperiment(
    Config& config, const ExperimentOptions& options) {
  NETDP_ASSIGN_OR_RETURN(double eps, config.GetDouble("epsilon", 1.0));
  NETDP_ASSIGN_OR_RETURN(double delta, config.GetDouble("delta", 1e-6));
  NETDP_ASSIGN_OR_RETURN(int64_t n, config.GetInt("n", 2000));
  NETDP_ASSIGN_OR_RETURN(int64_t length, config.GetInt("T", 20000));
  NETDP_ASSIGN_OR_RETURN(double cap, config.GetDouble("cap", 2.0));
  NETDP_ASSIGN_OR_RETURN(double lipschitz, config.GetDouble("lipschitz", 1.0));
  NETDP_ASSIGN_OR_RETURN(double sigma_max, config.GetDouble("sigma_max", 1e6));
  NETDP_ASSIGN_OR_RETURN(double ratio, config.GetDouble("ratio", 1.01));
  NETDP_RETURN_IF_ERROR(config.CheckAllUsed());
  if (n < 2 || length < 1) {
    return absl::InvalidArgumentError("need n >= 2 and T >= 1");
  }
  const double contributions =
      static_cast<double>(ContributionBound(cap, length, n));
  NETDP_ASSIGN_OR_RETURN(
      SigmaSearchResult found,
      SigmaSearch(eps, delta, contributions, static_cast<double>(n), lipschitz,
                  SigmaSearchOptions{1e-3, sigma_max, ratio}));
  NETDP_ASSIGN_OR_RETURN(RdpPoint point,
                         SgdNetworkRdp(found.alpha, contributions, lipschitz,
                                       found.sigma, static_cast<double>(n)));
  NETDP_ASSIGN_OR_RETURN(double recheck, RdpToDp(point, delta));

  ExperimentOutput out;
  out.csv = absl::StrCat("sigma_min,alpha_used,epsilon_recheck,contributions\n",
                         Fmt(found.sigma), ",", Fmt(found.alpha), ",",
                         Fmt(recheck), ",", Fmt(contributions), "\n");
  Json result;
  result["sigma_min"] = found.sigma;
  result["alpha_used"] = found.alpha;
  result["epsilon_recheck"] = recheck;
  result["contributions"] = contributions;
  out.files.emplace_back("results.json", result.dump(2) + "\n");
  out.meta = BaseMeta("sigma_search", options, 1);
  out.meta["config"] = config.resolved();
  return out;
}

absl::StatusOr<ExperimentOutput> RunExperiment(
    absl::string_view name, Config& config, const ExperimentOptions& options) {
  if (name == "bounds_sweep") return BoundsSweep(config, options);
  if (name == "empirical_sweep") return EmpiricalSweep(config, options);
  if (name == "protocol_mc") return ProtocolMonteCarlo(config, options);
  if (name == "sgd_compare") return SgdCompare(config, options);
  if (name == "sigma_search") return SigmaSearchExperiment(config, options);
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown experiment '", name, "', expected one of ",
      absl::StrJoin(ExperimentNames(), ", ")));
}

}  // namespace netdp
