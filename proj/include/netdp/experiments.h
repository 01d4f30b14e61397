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

#ifndef NETDP_EXPERIMENTS_H_
#define NETDP_EXPERIMENTS_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "json.hpp"
#include "netdp/config.h"

namespace netdp {

struct ExperimentOptions {
  uint64_t seed = 0;
  // Overrides the experiment's `runs` key when positive.
  int64_t runs = 0;
  int workers = 1;
  // Evaluate bounds outside their validity windows and tag the rows.
  bool unchecked = false;
};

struct ExperimentOutput {
  std::string csv;
  nlohmann::ordered_json meta;
  // Extra files written next to results.csv: (file name, contents).
  std::vector<std::pair<std::string, std::string>> files;
};

std::vector<absl::string_view> ExperimentNames();

// Runs one experiment in-process. Exit-code mapping: InvalidArgument,
// NotFound, OutOfRange -> invalid config; FailedPrecondition -> infeasible.
absl::StatusOr<ExperimentOutput> RunExperiment(absl::string_view name,
                                               Config& config,
                                               const ExperimentOptions& options);

absl::StatusOr<ExperimentOutput> BoundsSweep(Config& config,
                                             const ExperimentOptions& options);
absl::StatusOr<ExperimentOutput> EmpiricalSweep(
    Config& config, const ExperimentOptions& options);
absl::StatusOr<ExperimentOutput> ProtocolMonteCarlo(
    Config& config, const ExperimentOptions& options);
absl::StatusOr<ExperimentOutput> SgdCompare(Config& config,
                                            const ExperimentOptions& options);
absl::StatusOr<ExperimentOutput> SigmaSearchExperiment(
    Config& config, const ExperimentOptions& options);

struct DeltaSplit {
  double delta_prime = 0.0;
  double delta_hat = 0.0;
  double delta_tilde = 0.0;
};

// Reads `delta_total` (split in equal thirds) and lets `delta_prime`,
// `delta_hat` and `delta_tilde` override their share.
absl::StatusOr<DeltaSplit> ResolveDeltaSplit(Config& config);

}  // namespace netdp

#endif  // NETDP_EXPERIMENTS_H_
