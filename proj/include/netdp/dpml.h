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

#ifndef NETDP_DPML_H_
#define NETDP_DPML_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "netdp/core.h"

namespace netdp {

struct Dataset {
  int64_t dimension = 0;
  // Row-major, rows() x dimension.
  std::vector<double> features;
  // In {-1, +1}.
  std::vector<double> labels;
  // Row indices held by each user; users[u - 1] for 1-based u.
  std::vector<std::vector<int32_t>> users;

  int64_t rows() const { return static_cast<int64_t>(labels.size()); }
  std::span<const double> row(int64_t i) const {
    return {features.data() + i * dimension, static_cast<size_t>(dimension)};
  }
};

struct SyntheticOptions {
  int64_t rows = 2000;
  int64_t dimension = 20;
  // Distance between the two class means.
  double separation = 2.0;
};

// Two Gaussian classes with means +-(separation / (2 sqrt(d))) * 1 and
// identity covariance.
absl::StatusOr<Dataset> GenerateSynthetic(const SyntheticOptions& options,
                                          uint64_t seed);

// Header row, numeric feature columns, last column `label` in {-1, 1}.
absl::StatusOr<Dataset> ParseDatasetCsv(absl::string_view csv);
absl::StatusOr<Dataset> LoadDatasetCsv(const std::string& path);

struct PreprocessOptions {
  int64_t users = 1;
  double train_fraction = 0.8;
};

struct PreparedData {
  Dataset train;
  Dataset test;
  std::vector<std::string> warnings;
};

// Split, standardize on the train split, scale rows to unit L2 norm, and
// deal train rows to users round-robin.
absl::StatusOr<PreparedData> Preprocess(const Dataset& raw,
                                        const PreprocessOptions& options,
                                        uint64_t seed);

// Mean logistic-loss gradient over `rows` of `data`; zero when `rows` is
// empty.
void LogisticGrad(std::span<const double> w, const Dataset& data,
                  std::span<const int32_t> rows, std::span<double> grad);

// Mean of ln(1 + exp(-y w.x)) over all rows.
double LogisticObjective(std::span<const double> w, const Dataset& data);
double Accuracy(std::span<const double> w, const Dataset& data);

enum class Regime { kLocal, kNetwork, kCentralized };

absl::string_view RegimeName(Regime regime);
absl::StatusOr<Regime> ParseRegime(absl::string_view name);

// ceil(c T / n).
int64_t ContributionBound(double cap_multiplier, int64_t length, int64_t n);

struct RegimeSetup {
  Regime regime = Regime::kNetwork;
  PrivacyBudget budget{1.0, 1e-6};
  int64_t n = 200;
  int64_t length = 2000;
  double cap_multiplier = 2.0;
  double lipschitz = 1.0;
};

struct Calibration {
  double sigma = 0.0;
  // RDP order for the Network and Centralized paths; 0 for Local.
  double alpha = 0.0;
  double epsilon = 0.0;
  int64_t contribution_bound = 0;
  // "simple" or "advanced" for Local, "rdp" otherwise.
  std::string route;
};

// Epsilon the regime's accountant assigns to noise level `sigma`; infinity
// when the accountant's preconditions fail.
absl::StatusOr<Calibration> RegimeEpsilon(const RegimeSetup& setup,
                                          double sigma);

// Smallest grid sigma (ratio 1.01) meeting setup.budget.
absl::StatusOr<Calibration> CalibrateRegime(const RegimeSetup& setup);

struct TracePoint {
  int64_t step = 0;
  double objective = 0.0;
  double test_accuracy = 0.0;
};

struct TrainConfig {
  RegimeSetup setup;
  double eta = 0.1;
  uint64_t seed = 0;
  int64_t record_every = 100;
};

struct TrainResult {
  std::vector<double> model;
  std::vector<TracePoint> trace;
  double initial_objective = 0.0;
  double final_objective = 0.0;
  double final_accuracy = 0.0;
  // Objective exceeded 1000x its initial value or left the reals.
  bool diverged = false;
  double max_gradient_norm = 0.0;
  int64_t lipschitz_violations = 0;
  int64_t max_contributions = 0;
};

absl::StatusOr<TrainResult> Train(const TrainConfig& config,
                                  const Dataset& train, const Dataset& test,
                                  double sigma);

// 10 log-spaced step sizes in [1e-4, 2].
std::vector<double> EtaGrid();

struct RegimeSummary {
  Calibration calibration;
  double eta = 0.0;
  double initial_objective = 0.0;
  std::vector<double> final_objectives;
  std::vector<double> final_accuracies;
  int64_t diverged_runs = 0;
  int64_t lipschitz_violations = 0;
  int64_t max_contributions = 0;
  // Mean and standard deviation across runs at each recorded step.
  std::vector<TracePoint> mean_trace;
  std::vector<TracePoint> std_trace;
  // (eta, mean final objective) for every candidate step size.
  std::vector<std::pair<double, double>> eta_scores;

  double MeanObjective() const;
};

// Calibrates sigma, trains `runs` seeds per candidate eta, and keeps the eta
// with the lowest mean final train objective.
absl::StatusOr<RegimeSummary> TuneAndTrain(const RegimeSetup& setup,
                                           const PreparedData& data,
                                           std::span<const double> etas,
                                           int64_t runs, uint64_t seed,
                                           int workers = 1);

std::string TraceToCsv(std::span<const TracePoint> trace);

}  // namespace netdp

#endif  // NETDP_DPML_H_
