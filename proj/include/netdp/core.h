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

#ifndef NETDP_CORE_H_
#define NETDP_CORE_H_

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace netdp {

// An (epsilon, delta) guarantee. Inputs to the accountant are validated with
// ValidateBudget(); composed outputs may carry delta values that the caller is
// responsible for keeping below one.
struct PrivacyBudget {
  double epsilon = 0.0;
  double delta = 0.0;
};

// epsilon > 0 and 0 <= delta < 1.
absl::Status ValidateBudget(const PrivacyBudget& budget);

enum class TopologyKind { kDirectedRing, kComplete };

absl::string_view TopologyName(TopologyKind kind);

struct Topology {
  TopologyKind kind = TopologyKind::kComplete;
  int64_t n = 1;
};

// n >= 2 for the ring, n >= 1 for the complete graph.
absl::Status ValidateTopology(const Topology& topology);

// Ordered record of token holders. User indices are 1-based in memory; the
// CSV form is 0-based (see WalkToCsv).
class WalkTrace {
 public:
  WalkTrace() = default;
  WalkTrace(Topology topology, std::vector<int32_t> steps, uint64_t seed)
      : topology_(topology), steps_(std::move(steps)), seed_(seed) {}

  const Topology& topology() const { return topology_; }
  int64_t n() const { return topology_.n; }
  int64_t length() const { return static_cast<int64_t>(steps_.size()); }
  uint64_t seed() const { return seed_; }
  const std::vector<int32_t>& steps() const { return steps_; }
  // 1-based position, 1-based user.
  int32_t user_at(int64_t position) const { return steps_[position - 1]; }

 private:
  Topology topology_;
  std::vector<int32_t> steps_;
  uint64_t seed_ = 0;
};

// Checks the WalkTrace invariants (ring order, entries in range).
absl::Status ValidateWalk(const WalkTrace& walk);

struct WalkOptions {
  // Complete graph only: forbid sending the token to its current holder.
  bool exclude_self_transitions = false;
};

// Ring: 1, 2, ..., n repeated T / n times. Complete: i.i.d. uniform users
// drawn from the kWalk stream of `seed`.
absl::StatusOr<WalkTrace> SampleWalk(const Topology& topology, int64_t length,
                                     uint64_t seed,
                                     const WalkOptions& options = {});

// Number of times each user holds the token; entry u-1 is user u.
std::vector<int64_t> VisitCounts(const WalkTrace& walk);

// Gaps between consecutive visits of `user`, counting the first visit from
// position 0. Lengths sum to the position of the last visit; steps after it
// leak nothing to `user`.
absl::StatusOr<std::vector<int64_t>> CycleLengths(const WalkTrace& walk,
                                                  int64_t user);

// `step,user` CSV, both columns 0-based.
std::string WalkToCsv(const WalkTrace& walk);
absl::StatusOr<WalkTrace> WalkFromCsv(absl::string_view csv,
                                      const Topology& topology, uint64_t seed);

// The aggregate carried along the walk.
using Token =
    std::variant<double, std::vector<int64_t>, std::vector<double>>;

}  // namespace netdp

#endif  // NETDP_CORE_H_
