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

#ifndef NETDP_EMPIRICAL_H_
#define NETDP_EMPIRICAL_H_

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "netdp/accountant.h"
#include "netdp/core.h"

namespace netdp {

// Entry (u, v) is the loss of u's data towards observer v. Users are 1-based.
class PairLossMatrix {
 public:
  PairLossMatrix() = default;
  explicit PairLossMatrix(int64_t n);

  int64_t n() const { return n_; }
  double epsilon(int64_t u, int64_t v) const { return eps_[Index(u, v)]; }
  double delta(int64_t u, int64_t v) const { return delta_[Index(u, v)]; }
  void Set(int64_t u, int64_t v, double epsilon, double delta) {
    eps_[Index(u, v)] = epsilon;
    delta_[Index(u, v)] = delta;
  }
  // Largest delta over off-diagonal pairs.
  double MaxDelta() const;

 private:
  size_t Index(int64_t u, int64_t v) const {
    return static_cast<size_t>((u - 1) * n_ + (v - 1));
  }

  int64_t n_ = 0;
  std::vector<double> eps_;
  std::vector<double> delta_;
};

// `u,v,epsilon` with 0-based users, off-diagonal entries only.
std::string ToCsv(const PairLossMatrix& matrix);

struct EmpiricalParams {
  double epsilon0 = 0.5;
  double delta0 = 1e-6;
  double delta_prime = 1e-3;
};

absl::StatusOr<PairLossMatrix> EmpiricalPairLossSum(
    const WalkTrace& walk, const EmpiricalParams& params);

// Number of contributions of u directly before or after a turn of v.
// Row-major n x n, 1-based users mapped to (u - 1) * n + (v - 1).
std::vector<int64_t> SpottedCounts(const WalkTrace& walk);

struct SpottedLoss {
  PairLossMatrix total;
  PairLossMatrix spotted;
};

absl::StatusOr<SpottedLoss> EmpiricalPairLossSpotted(
    const WalkTrace& walk, const EmpiricalParams& params,
    CompositionMode mode);

struct EmpiricalStats {
  double mean = 0.0;
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
  int64_t pairs = 0;
};

absl::StatusOr<EmpiricalStats> EmpiricalSummary(
    std::span<const PairLossMatrix> matrices);

}  // namespace netdp

#endif  // NETDP_EMPIRICAL_H_
