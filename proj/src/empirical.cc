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

#include "netdp/empirical.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "netdp/bound_report.h"

namespace netdp {
namespace {

constexpr double kUndefined = std::numeric_limits<double>::quiet_NaN();

struct PieceCost {
  double square = 0.0;
  double expm1 = 0.0;
};

absl::Status CheckInputs(const WalkTrace& walk, const EmpiricalParams& p) {
  if (walk.topology().kind != TopologyKind::kComplete) {
    return absl::InvalidArgumentError(
        "empirical accounting expects a complete-graph walk");
  }
  if (absl::Status s = ValidateWalk(walk); !s.ok()) return s;
  if (!(p.epsilon0 > 0.0 && p.epsilon0 <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("eps0 must lie in (0, 1], got ", p.epsilon0));
  }
  if (!(p.delta0 >= 0.0 && p.delta0 < 1.0) ||
      !(p.delta_prime > 0.0 && p.delta_prime < 1.0)) {
    return absl::InvalidArgumentError("delta0 in [0,1) and delta' in (0,1)");
  }
  return absl::OkStatus();
}

}  // namespace

PairLossMatrix::PairLossMatrix(int64_t n)
    : n_(n),
      eps_(static_cast<size_t>(n * n), 0.0),
      delta_(static_cast<size_t>(n * n), 0.0) {
  for (int64_t u = 1; u <= n; ++u) {
    eps_[Index(u, u)] = kUndefined;
    delta_[Index(u, u)] = kUndefined;
  }
}

double PairLossMatrix::MaxDelta() const {
  double out = 0.0;
  for (double d : delta_) {
    if (!std::isnan(d)) out = std::max(out, d);
  }
  return out;
}

std::string ToCsv(const PairLossMatrix& matrix) {
  std::string out = "u,v,epsilon\n";
  for (int64_t u = 1; u <= matrix.n(); ++u) {
    for (int64_t v = 1; v <= matrix.n(); ++v) {
      if (u == v) continue;
      absl::StrAppend(&out, u - 1, ",", v - 1, ",",
                      FormatDouble(matrix.epsilon(u, v)), "\n");
    }
  }
  return out;
}

absl::StatusOr<PairLossMatrix> EmpiricalPairLossSum(
    const WalkTrace& walk, const EmpiricalParams& params) {
  if (absl::Status s = CheckInputs(walk, params); !s.ok()) return s;
  const int64_t n = walk.n();
  const int64_t length = walk.length();
  const double nd = static_cast<double>(n);

  // Per-piece loss depends only on the number m of aggregated contributions.
  std::vector<PieceCost> cost(n + 1);
  for (int64_t m = 1; m <= n; ++m) {
    const double eps = SubsampleAmplify(
        params.epsilon0 / std::sqrt(static_cast<double>(m)), nd, m);
    cost[m] = PieceCost{eps * eps, eps * std::expm1(eps)};
  }
  const double log_term = 2.0 * std::log(1.0 / params.delta_prime);

  PairLossMatrix matrix(n);
  std::vector<double> squares(n + 1);
  std::vector<double> expm1s(n + 1);
  std::vector<int64_t> pieces(n + 1);
  std::vector<int64_t> stamp(n + 1);
  std::vector<int32_t> members;
  members.reserve(n);

  for (int32_t v = 1; v <= n; ++v) {
    std::fill(squares.begin(), squares.end(), 0.0);
    std::fill(expm1s.begin(), expm1s.end(), 0.0);
    std::fill(pieces.begin(), pieces.end(), 0);
    std::fill(stamp.begin(), stamp.end(), 0);
    int64_t piece_id = 1;
    int64_t piece_start = 1;
    int64_t others = 0;
    members.clear();

    auto flush = [&]() {
      if (others > 0) {
        const PieceCost& c = cost[others];
        for (int32_t u : members) {
          squares[u] += c.square;
          expm1s[u] += c.expm1;
          ++pieces[u];
        }
      }
      members.clear();
      others = 0;
      ++piece_id;
    };

    for (int64_t t = 1; t <= length; ++t) {
      const int32_t u = walk.user_at(t);
      if (u == v) {
        // v observes the token: the running cycle ends here.
        flush();
        piece_start = t;
      } else if (t - piece_start >= n) {
        // Free fictive observation every n steps of a cycle.
        flush();
        piece_start = t;
      }
      if (u != v) {
        ++others;
        if (stamp[u] != piece_id) {
          stamp[u] = piece_id;
          members.push_back(u);
        }
      }
    }
    // Contributions after the last visit of v are never observed by v.

    for (int32_t u = 1; u <= n; ++u) {
      if (u == v) continue;
      if (pieces[u] == 0) continue;
      const double eps = std::sqrt(log_term * squares[u]) + expm1s[u];
      matrix.Set(u, v, eps,
                 static_cast<double>(pieces[u]) * params.delta0 +
                     params.delta_prime);
    }
  }
  return matrix;
}

std::vector<int64_t> SpottedCounts(const WalkTrace& walk) {
  const int64_t n = walk.n();
  const int64_t length = walk.length();
  std::vector<int64_t> counts(static_cast<size_t>(n * n), 0);
  for (int64_t t = 1; t <= length; ++t) {
    const int32_t u = walk.user_at(t);
    const int32_t before = t > 1 ? walk.user_at(t - 1) : 0;
    const int32_t after = t < length ? walk.user_at(t + 1) : 0;
    if (before != 0 && before != u) ++counts[(u - 1) * n + (before - 1)];
    if (after != 0 && after != u && after != before) {
      ++counts[(u - 1) * n + (after - 1)];
    }
  }
  return counts;
}

absl::StatusOr<SpottedLoss> EmpiricalPairLossSpotted(
    const WalkTrace& walk, const EmpiricalParams& params,
    CompositionMode mode) {
  auto base = EmpiricalPairLossSum(walk, params);
  if (!base.ok()) return base.status();
  const int64_t n = walk.n();
  const std::vector<int64_t> counts = SpottedCounts(walk);
  SpottedLoss out{std::move(*base), PairLossMatrix(n)};
  for (int64_t u = 1; u <= n; ++u) {
    for (int64_t v = 1; v <= n; ++v) {
      if (u == v) continue;
      const int64_t spotted = counts[(u - 1) * n + (v - 1)];
      if (spotted == 0) continue;
      PrivacyBudget extra;
      if (mode == CompositionMode::kSimple) {
        extra = SimpleComposition(params.epsilon0, params.delta0, spotted);
      } else {
        auto advanced = AdvancedComposition(params.epsilon0, params.delta0,
                                            spotted, params.delta_prime);
        if (!advanced.ok()) return advanced.status();
        extra = *advanced;
      }
      out.spotted.Set(u, v, extra.epsilon, extra.delta);
      out.total.Set(u, v, out.total.epsilon(u, v) + extra.epsilon,
                    out.total.delta(u, v) + extra.delta);
    }
  }
  return out;
}

absl::StatusOr<EmpiricalStats> EmpiricalSummary(
    std::span<const PairLossMatrix> matrices) {
  if (matrices.empty()) {
    return absl::InvalidArgumentError("no matrices to summarize");
  }
  const int64_t n = matrices.front().n();
  EmpiricalStats stats;
  double sum = 0.0;
  for (const PairLossMatrix& m : matrices) {
    if (m.n() != n) {
      return absl::InvalidArgumentError("matrices disagree on n");
    }
    for (int64_t u = 1; u <= n; ++u) {
      for (int64_t v = 1; v <= n; ++v) {
        const double e = m.epsilon(u, v);
        if (u == v || !std::isfinite(e)) continue;
        sum += e;
        stats.min = std::min(stats.min, e);
        stats.max = std::max(stats.max, e);
        ++stats.pairs;
      }
    }
  }
  if (stats.pairs > 0) {
    stats.mean = sum / static_cast<double>(stats.pairs);
  } else {
    stats.min = stats.max = 0.0;
  }
  return stats;
}

}  // namespace netdp
