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
#include <cstdint>
#include <numeric>
#include <vector>

#include "gtest/gtest.h"
#include "netdp/accountant.h"
#include "netdp/core.h"
#include "netdp/rng.h"

namespace netdp {
namespace {

WalkTrace Complete(std::vector<int32_t> steps, int64_t n) {
  return WalkTrace(Topology{TopologyKind::kComplete, n}, std::move(steps), 0);
}

TEST(EmpiricalPairLossTest, HandExample) {
  const EmpiricalParams p;
  auto m = EmpiricalPairLossSum(Complete({2, 1, 2, 3, 1}, 3), p);
  ASSERT_TRUE(m.ok());
  const double a = SubsampleAmplify(p.epsilon0, 3, 1);
  const double b = SubsampleAmplify(p.epsilon0 / std::sqrt(2.0), 3, 2);
  const double log_term = 2.0 * std::log(1.0 / p.delta_prime);
  EXPECT_NEAR(m->epsilon(2, 1),
              std::sqrt(log_term * (a * a + b * b)) + a * std::expm1(a) +
                  b * std::expm1(b),
              1e-14);
  EXPECT_NEAR(m->epsilon(3, 1), std::sqrt(log_term) * b + b * std::expm1(b),
              1e-14);
  EXPECT_NEAR(m->epsilon(1, 2), std::sqrt(log_term) * a + a * std::expm1(a),
              1e-14);
  EXPECT_EQ(m->epsilon(3, 2), 0.0);
  EXPECT_DOUBLE_EQ(m->delta(2, 1), 2 * p.delta0 + p.delta_prime);
  EXPECT_TRUE(std::isnan(m->epsilon(1, 1)));
}

TEST(EmpiricalPairLossTest, LongCyclesAreSplit) {
  // Observer 1 arrives only at the end; the cycle is cut every n steps.
  const EmpiricalParams p;
  std::vector<int32_t> steps(9, 2);
  steps.push_back(1);
  auto m = EmpiricalPairLossSum(Complete(steps, 3), p);
  ASSERT_TRUE(m.ok());
  EXPECT_DOUBLE_EQ(m->delta(2, 1), 3 * p.delta0 + p.delta_prime);
}

TEST(EmpiricalPairLossTest, EquivariantUnderRelabeling) {
  const int64_t n = 12;
  auto walk = SampleWalk(Topology{TopologyKind::kComplete, n}, 600, 4);
  ASSERT_TRUE(walk.ok());
  std::vector<int32_t> perm(n + 1);
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(9, Stream::kData);
  std::shuffle(perm.begin() + 1, perm.end(), rng.engine());
  std::vector<int32_t> relabeled;
  for (int32_t u : walk->steps()) relabeled.push_back(perm[u]);
  const EmpiricalParams p;
  auto a = EmpiricalPairLossSum(*walk, p);
  auto b = EmpiricalPairLossSum(Complete(relabeled, n), p);
  ASSERT_TRUE(a.ok() && b.ok());
  for (int64_t u = 1; u <= n; ++u) {
    for (int64_t v = 1; v <= n; ++v) {
      if (u == v) continue;
      EXPECT_EQ(a->epsilon(u, v), b->epsilon(perm[u], perm[v]));
    }
  }
}

TEST(EmpiricalPairLossTest, BelowTheoryOnRandomWalks) {
  const int64_t n = 50;
  const EmpiricalParams p;
  auto walk = SampleWalk(Topology{TopologyKind::kComplete, n}, 100 * n, 6);
  ASSERT_TRUE(walk.ok());
  auto m = EmpiricalPairLossSum(*walk, p);
  ASSERT_TRUE(m.ok());
  CompleteGraphParams t;
  t.epsilon = p.epsilon0;
  t.delta = p.delta0;
  t.n = n;
  t.length = 100 * n;
  t.delta_prime = p.delta_prime;
  auto theory = CompleteSumBound(t);
  ASSERT_TRUE(theory.ok());
  std::vector<PairLossMatrix> ms = {*m};
  auto stats = EmpiricalSummary(ms);
  ASSERT_TRUE(stats.ok());
  EXPECT_EQ(stats->pairs, n * (n - 1));
  EXPECT_LE(stats->max, theory->epsilon_out);
}

TEST(EmpiricalPairLossTest, RejectsBadInputs) {
  EmpiricalParams p;
  p.epsilon0 = 1.5;
  EXPECT_FALSE(EmpiricalPairLossSum(Complete({1, 2}, 2), p).ok());
  auto ring = SampleWalk(Topology{TopologyKind::kDirectedRing, 3}, 6, 0);
  EXPECT_FALSE(EmpiricalPairLossSum(*ring, EmpiricalParams{}).ok());
}

TEST(SpottedCountsTest, HandExample) {
  const std::vector<int64_t> s = SpottedCounts(Complete({2, 1, 2, 3, 1}, 3));
  auto at = [&](int u, int v) { return s[(u - 1) * 3 + (v - 1)]; };
  EXPECT_EQ(at(2, 1), 2);
  EXPECT_EQ(at(1, 2), 1);
  EXPECT_EQ(at(2, 3), 1);
  EXPECT_EQ(at(3, 2), 1);
  EXPECT_EQ(at(3, 1), 1);
  EXPECT_EQ(at(1, 3), 1);
  EXPECT_EQ(at(1, 1), 0);
}

TEST(SpottedLossTest, TotalIsBasePlusSpotted) {
  auto walk = SampleWalk(Topology{TopologyKind::kComplete, 8}, 400, 2);
  ASSERT_TRUE(walk.ok());
  const EmpiricalParams p;
  auto base = EmpiricalPairLossSum(*walk, p);
  auto spotted = EmpiricalPairLossSpotted(*walk, p, CompositionMode::kAdvanced);
  ASSERT_TRUE(base.ok() && spotted.ok());
  for (int64_t u = 1; u <= 8; ++u) {
    for (int64_t v = 1; v <= 8; ++v) {
      if (u == v) continue;
      EXPECT_NEAR(spotted->total.epsilon(u, v),
                  base->epsilon(u, v) + spotted->spotted.epsilon(u, v), 1e-12);
    }
  }
}

TEST(PairLossCsvTest, ZeroBased) {
  PairLossMatrix m(2);
  m.Set(1, 2, 0.25, 1e-3);
  m.Set(2, 1, 0.5, 1e-3);
  EXPECT_EQ(ToCsv(m), "u,v,epsilon\n0,1,0.25\n1,0,0.5\n");
  EXPECT_DOUBLE_EQ(m.MaxDelta(), 1e-3);
}

}  // namespace
}  // namespace netdp
