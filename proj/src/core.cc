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

#include "netdp/core.h"

#include <cmath>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "netdp/rng.h"

namespace netdp {

absl::Status ValidateBudget(const PrivacyBudget& budget) {
  if (!(budget.epsilon > 0.0) || !std::isfinite(budget.epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be positive and finite, got ",
                     budget.epsilon));
  }
  if (!(budget.delta >= 0.0 && budget.delta < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in [0, 1), got ", budget.delta));
  }
  return absl::OkStatus();
}

absl::string_view TopologyName(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::kDirectedRing:
      return "ring";
    case TopologyKind::kComplete:
      return "complete";
  }
  return "unknown";
}

absl::Status ValidateTopology(const Topology& topology) {
  const int64_t min_n =
      topology.kind == TopologyKind::kDirectedRing ? 2 : 1;
  if (topology.n < min_n) {
    return absl::InvalidArgumentError(
        absl::StrCat(TopologyName(topology.kind), " topology needs n >= ",
                     min_n, ", got ", topology.n));
  }
  if (topology.n > INT32_MAX) {
    return absl::InvalidArgumentError("n does not fit a 32-bit user index");
  }
  return absl::OkStatus();
}

absl::Status ValidateWalk(const WalkTrace& walk) {
  if (absl::Status s = ValidateTopology(walk.topology()); !s.ok()) return s;
  if (walk.length() < 1) {
    return absl::InvalidArgumentError("walk must have at least one step");
  }
  const int64_t n = walk.n();
  if (walk.topology().kind == TopologyKind::kDirectedRing) {
    if (walk.length() % n != 0) {
      return absl::InvalidArgumentError("ring walk length is not K * n");
    }
    for (int64_t t = 0; t < walk.length(); ++t) {
      if (walk.steps()[t] != t % n + 1) {
        return absl::InvalidArgumentError(
            absl::StrCat("ring walk breaks user order at step ", t + 1));
      }
    }
    return absl::OkStatus();
  }
  for (int64_t t = 0; t < walk.length(); ++t) {
    const int32_t u = walk.steps()[t];
    if (u < 1 || u > n) {
      return absl::InvalidArgumentError(
          absl::StrCat("user ", u, " at step ", t + 1, " outside [1, ", n,
                       "]"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<WalkTrace> SampleWalk(const Topology& topology, int64_t length,
                                     uint64_t seed,
                                     const WalkOptions& options) {
  if (absl::Status s = ValidateTopology(topology); !s.ok()) return s;
  if (length < 1) {
    return absl::InvalidArgumentError("walk length T must be >= 1");
  }
  const int64_t n = topology.n;
  std::vector<int32_t> steps(length);
  if (topology.kind == TopologyKind::kDirectedRing) {
    if (length % n != 0) {
      return absl::InvalidArgumentError(absl::StrCat(
          "ring walk length ", length, " is not a multiple of n = ", n));
    }
    for (int64_t t = 0; t < length; ++t) {
      steps[t] = static_cast<int32_t>(t % n + 1);
    }
    return WalkTrace(topology, std::move(steps), seed);
  }
  if (options.exclude_self_transitions && n < 2) {
    return absl::InvalidArgumentError(
        "excluding self transitions needs at least two users");
  }
  Rng rng(seed, Stream::kWalk);
  std::uniform_int_distribution<int32_t> any(1, static_cast<int32_t>(n));
  if (!options.exclude_self_transitions) {
    for (int64_t t = 0; t < length; ++t) steps[t] = any(rng.engine());
  } else {
    std::uniform_int_distribution<int32_t> other(1,
                                                 static_cast<int32_t>(n - 1));
    steps[0] = any(rng.engine());
    for (int64_t t = 1; t < length; ++t) {
      const int32_t draw = other(rng.engine());
      steps[t] = draw >= steps[t - 1] ? draw + 1 : draw;
    }
  }
  return WalkTrace(topology, std::move(steps), seed);
}

std::vector<int64_t> VisitCounts(const WalkTrace& walk) {
  std::vector<int64_t> counts(walk.n(), 0);
  for (int32_t u : walk.steps()) ++counts[u - 1];
  return counts;
}

absl::StatusOr<std::vector<int64_t>> CycleLengths(const WalkTrace& walk,
                                                  int64_t user) {
  if (user < 1 || user > walk.n()) {
    return absl::InvalidArgumentError(
        absl::StrCat("user ", user, " outside [1, ", walk.n(), "]"));
  }
  std::vector<int64_t> lengths;
  int64_t previous = 0;
  for (int64_t t = 1; t <= walk.length(); ++t) {
    if (walk.user_at(t) == user) {
      lengths.push_back(t - previous);
      previous = t;
    }
  }
  return lengths;
}

std::string WalkToCsv(const WalkTrace& walk) {
  std::string out = "step,user\n";
  out.reserve(out.size() + walk.steps().size() * 12);
  for (int64_t t = 0; t < walk.length(); ++t) {
    absl::StrAppend(&out, t, ",", walk.steps()[t] - 1, "\n");
  }
  return out;
}

absl::StatusOr<WalkTrace> WalkFromCsv(absl::string_view csv,
                                      const Topology& topology,
                                      uint64_t seed) {
  std::vector<int32_t> steps;
  bool header = true;
  for (absl::string_view line : absl::StrSplit(csv, '\n', absl::SkipEmpty())) {
    line = absl::StripTrailingAsciiWhitespace(line);
    if (header) {
      if (line != "step,user") {
        return absl::InvalidArgumentError("walk CSV must start with step,user");
      }
      header = false;
      continue;
    }
    std::vector<absl::string_view> fields = absl::StrSplit(line, ',');
    int64_t step = 0;
    int32_t user = 0;
    if (fields.size() != 2 || !absl::SimpleAtoi(fields[0], &step) ||
        !absl::SimpleAtoi(fields[1], &user)) {
      return absl::InvalidArgumentError(
          absl::StrCat("malformed walk CSV row: ", line));
    }
    if (step != static_cast<int64_t>(steps.size())) {
      return absl::InvalidArgumentError("walk CSV steps are not consecutive");
    }
    steps.push_back(user + 1);
  }
  WalkTrace walk(topology, std::move(steps), seed);
  if (absl::Status s = ValidateWalk(walk); !s.ok()) return s;
  return walk;
}

}  // namespace netdp
