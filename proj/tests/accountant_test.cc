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

#include <cmath>
#include <cstdint>

#include "gtest/gtest.h"

namespace netdp {
namespace {

constexpr double kTol = 1e-12;

TEST(AdvancedCompositionTest, SingleMechanism) {
  auto b = AdvancedComposition(0.1, 0.0, 1, 1e-5);
  ASSERT_TRUE(b.ok());
  EXPECT_NEAR(b->epsilon, 0.490369683026372883, kTol);
  EXPECT_DOUBLE_EQ(b->delta, 1e-5);
}

TEST(AdvancedCompositionTest, DeltaAccumulates) {
  auto b = AdvancedComposition(0.2, 1e-7, 50, 1e-4);
  ASSERT_TRUE(b.ok());
  EXPECT_NEAR(b->delta, 50 * 1e-7 + 1e-4, 1e-18);
}

TEST(AdvancedCompositionTest, RejectsBadInputs) {
  EXPECT_FALSE(AdvancedComposition(0.1, 0.0, 0, 1e-5).ok());
  EXPECT_FALSE(AdvancedComposition(0.1, 0.0, 3, 0.0).ok());
  EXPECT_FALSE(AdvancedComposition(-0.1, 0.0, 3, 1e-3).ok());
}

TEST(AdvancedCompositionTest, BeatsSimpleForManySmallSteps) {
  const double eps = 0.01;
  const int64_t k = 10000;
  EXPECT_LT(AdvancedComposition(eps, 0.0, k, 1e-6)->epsilon,
            SimpleComposition(eps, 0.0, k).epsilon);
}

TEST(HeterogeneousCompositionTest, ReducesToHomogeneous) {
  HeterogeneousComposition h;
  for (int i = 0; i < 17; ++i) h.Add(0.05);
  EXPECT_NEAR(h.Epsilon(1e-4), AdvancedComposition(0.05, 0.0, 17, 1e-4)->epsilon,
              kTol);
  EXPECT_EQ(HeterogeneousComposition().Epsilon(1e-4), 0.0);
}

TEST(ChernoffVisitBoundTest, Value) {
  const double n = 1000;
  auto v = ChernoffVisitBound(100 * n, 1.0 / n, 1e-3);
  ASSERT_TRUE(v.ok());
  EXPECT_NEAR(*v, 145.522813881554390, 1e-9);
  EXPECT_FALSE(ChernoffVisitBound(100, 0.0, 1e-3).ok());
}

TEST(SubsampleAmplifyTest, Values) {
  EXPECT_NEAR(SubsampleAmplify(1.0, 100, 1), 0.0170368632361765498, kTol);
  EXPECT_NEAR(SubsampleAmplify(0.3, 1, 5), 0.3, kTol);
  EXPECT_LE(SubsampleAmplify(0.7, 50, 20), 0.7);
}

TEST(CycleBoundSumTest, DominatesSubsampledCycleOnGrid) {
  for (double n : {10.0, 1e2, 1e3, 1e4}) {
    for (double eps : {0.1, 0.5, 1.0}) {
      const double bound = *CycleBoundSum(eps, n);
      for (int64_t m = 1; m <= static_cast<int64_t>(n); ++m) {
        ASSERT_LE(SubsampleAmplify(eps / std::sqrt(static_cast<double>(m)), n, m),
                  bound)
            << "n=" << n << " eps=" << eps << " m=" << m;
      }
    }
  }
}

TEST(CycleBoundSumTest, RejectsLargeEpsilon) {
  EXPECT_EQ(CycleBoundSum(1.5, 100).status().code(),
            absl::StatusCode::kOutOfRange);
}

TEST(RingSumBoundTest, UtilityFactor) {
  auto r = RingSumBound(0.1, 1e-6, 100, 10, 1e-5);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->intermediate("noise_additions"), 10);
  EXPECT_NEAR(r->intermediate("utility_std_factor"), std::sqrt(10.0), kTol);
  EXPECT_NEAR(r->epsilon_out,
              AdvancedComposition(0.1, 1e-6, 10, 1e-5)->epsilon, kTol);
  EXPECT_EQ(RingSumBound(0.1, 1e-6, 3, 9, 1e-5)->intermediate("noise_additions"),
            13);
}

TEST(ShuffleTest, Erlingsson) {
  auto e = ErlingssonShuffle(0.1, 10000, 1e-3);
  ASSERT_TRUE(e.ok());
  EXPECT_NEAR(*e, 0.0315391306185415919, kTol);
  EXPECT_EQ(ErlingssonShuffle(0.6, 10000, 1e-3).status().code(),
            absl::StatusCode::kOutOfRange);
  EXPECT_TRUE(ErlingssonShuffle(0.6, 10000, 1e-3, Validity::kUnchecked).ok());
}

TEST(ShuffleTest, Feldman) {
  auto b = FeldmanShuffle(1.0, 1e4, 1e-2);
  ASSERT_TRUE(b.ok());
  EXPECT_NEAR(b->exact, 0.139936243644236350, kTol);
  EXPECT_LE(b->exact, b->simplified);
  EXPECT_FALSE(b->outside_validity);
}

TEST(ShuffleTest, FeldmanWindow) {
  EXPECT_EQ(FeldmanShuffle(5.0, 100, 1e-2).status().code(),
            absl::StatusCode::kOutOfRange);
  auto b = FeldmanShuffle(5.0, 100, 1e-2, Validity::kUnchecked);
  ASSERT_TRUE(b.ok());
  EXPECT_TRUE(b->outside_validity);
}

TEST(RingHistBoundTest, FlipRate) {
  auto r = RingHistBound(0.1, 1e-3, 10000, 5, 2, 1e-3);
  ASSERT_TRUE(r.ok());
  EXPECT_NEAR(r->intermediate("gamma"), 0.984231741748290300, kTol);
  EXPECT_NEAR(r->intermediate("expected_random_responses"),
              0.984231741748290300 * 10000 * 6, 1e-8);
}

TEST(RingHistBoundTest, ZeroRoundsLeaksNothing) {
  auto r = RingHistBound(0.1, 1e-3, 10000, 0, 2, 1e-3);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->epsilon_out, 0.0);
}

TEST(RingHistBoundTest, Window) {
  EXPECT_EQ(RingHistBound(0.1, 1e-3, 500, 5, 2, 1e-3).status().code(),
            absl::StatusCode::kOutOfRange);
  auto r = RingHistBound(0.1, 1e-3, 500, 5, 2, 1e-3, Validity::kUnchecked);
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(r->outside_validity);
}

CompleteGraphParams Params(double eps, double delta, double n, double t) {
  CompleteGraphParams p;
  p.epsilon = eps;
  p.delta = delta;
  p.n = n;
  p.length = t;
  return p;
}

TEST(CompleteSumBoundTest, Value) {
  auto r = CompleteSumBound(Params(0.5, 1e-7, 1000, 1e5));
  ASSERT_TRUE(r.ok());
  EXPECT_NEAR(r->epsilon_out, 3.14319871693561216, 1e-11);
  EXPECT_NEAR(r->delta_out, 0.00202455228138815548, 1e-15);
  EXPECT_EQ(r->name, "complete_sum");
}

TEST(CompleteSumBoundTest, Window) {
  EXPECT_EQ(CompleteSumBound(Params(1.5, 1e-7, 1000, 1e5)).status().code(),
            absl::StatusCode::kOutOfRange);
  CompleteGraphParams p = Params(1.5, 1e-7, 1000, 1e5);
  p.validity = Validity::kUnchecked;
  auto r = CompleteSumBound(p);
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(r->outside_validity);
}

TEST(CompleteSumBoundTest, CollusionShrinksPopulation) {
  CompleteGraphParams p = Params(0.5, 1e-7, 1000, 1e5);
  p.colluders = 4;
  auto colluding = CompleteSumBound(p);
  ASSERT_TRUE(colluding.ok());
  EXPECT_DOUBLE_EQ(colluding->intermediate("n_effective"), 250.0);
  EXPECT_GT(colluding->epsilon_out,
            CompleteSumBound(Params(0.5, 1e-7, 1000, 1e5))->epsilon_out);
}

TEST(CompleteSumBoundTest, FixedVisitsIsSmaller) {
  CompleteGraphParams p = Params(0.5, 1e-7, 1000, 1e5);
  p.visits = VisitBound::kFixed;
  auto fixed = CompleteSumBound(p);
  ASSERT_TRUE(fixed.ok());
  EXPECT_DOUBLE_EQ(fixed->intermediate("N_v"), 100.0);
  EXPECT_LT(fixed->epsilon_out,
            CompleteSumBound(Params(0.5, 1e-7, 1000, 1e5))->epsilon_out);
}

TEST(CompleteSumBoundTest, BeatsLocalFromTwentyUsers) {
  for (double eps : {0.5, 1.0}) {
    for (double n : {20.0, 50.0, 1e2, 1e3, 1e4}) {
      const CompleteGraphParams p = Params(eps, 1e-6, n, 100 * n);
      EXPECT_LT(CompleteSumBound(p)->epsilon_out,
                LocalBaselineSum(p)->epsilon_out)
          << "n=" << n << " eps=" << eps;
    }
  }
}

TEST(HistCycleBoundTest, BoundIsMinimum) {
  const HistCycleArms small = HistCycleBound(1, 1e4, 0.5, 1e-6);
  EXPECT_EQ(small.bound(), small.subsampling);
  const HistCycleArms large = HistCycleBound(1e4, 1e4, 0.5, 1e-6);
  EXPECT_EQ(large.bound(), large.shuffling);
}

TEST(CompleteHistBoundTest, Value) {
  auto r = CompleteHistBound(Params(0.5, 1e-6, 1e4, 1e6), 5);
  ASSERT_TRUE(r.ok());
  EXPECT_NEAR(r->epsilon_out, 27.8067984744596406, 1e-10);
  EXPECT_NEAR(r->intermediate("expected_random_responses"),
              r->intermediate("gamma") * 1e6, 1e-6);
  EXPECT_EQ(CompleteHistBound(Params(0.5, 1e-6, 100, 1e4), 5).status().code(),
            absl::StatusCode::kOutOfRange);
}

TEST(SgdClosedFormBoundTest, Value) {
  auto r = SgdClosedFormBound(0.5, 1e-6, 1e3, 1e6, 1e-3);
  ASSERT_TRUE(r.ok());
  EXPECT_NEAR(r->epsilon_out, 3.68726373613226446, 1e-11);
  EXPECT_NEAR(r->intermediate("q"), 27.6310211159285482, 1e-11);
  EXPECT_NEAR(r->intermediate("N_u"), 1143.95577736564244, 1e-9);
}

TEST(SgdClosedFormBoundTest, Window) {
  EXPECT_EQ(SgdClosedFormBound(1.0, 1e-6, 1e3, 1e6, 1e-3).status().code(),
            absl::StatusCode::kOutOfRange);
  EXPECT_EQ(SgdClosedFormBound(0.5, 0.5, 1e3, 1e6, 1e-3).status().code(),
            absl::StatusCode::kOutOfRange);
}

TEST(SgdUtilityBoundTest, Value) {
  auto u = SgdUtilityBound(1, 1, 10, 1.0, 1e-6, 10000);
  ASSERT_TRUE(u.ok());
  EXPECT_NEAR(*u, 7.51709063518952766, 1e-11);
}

TEST(CollusionAdjustTest, Values) {
  EXPECT_DOUBLE_EQ(*CollusionAdjust(100, 4), 25.0);
  EXPECT_DOUBLE_EQ(*CollusionAdjust(1, 1), 1.0);
  EXPECT_FALSE(CollusionAdjust(10, 10).ok());
  EXPECT_FALSE(CollusionAdjust(10, 0).ok());
}

TEST(SpottedBoundTest, SimpleDominatesAdvancedForLargeCounts) {
  auto simple = SpottedBound(1e5, 100, 0.5, 1e-3, 1e-3, CompositionMode::kSimple);
  auto advanced =
      SpottedBound(1e5, 100, 0.5, 1e-3, 1e-3, CompositionMode::kAdvanced);
  ASSERT_TRUE(simple.ok() && advanced.ok());
  EXPECT_GT(*simple, 0.0);
  EXPECT_LT(*advanced, *simple);
}

TEST(BoundReportTest, CsvAndJsonKeepOrder) {
  auto r = RingSumBound(0.1, 1e-6, 100, 10, 1e-5);
  ASSERT_TRUE(r.ok());
  const std::string header = CsvHeader(*r);
  EXPECT_LT(header.find("epsilon"), header.find("noise_additions"));
  EXPECT_EQ(ToJson(*r)["name"], "ring_sum");
}

}  // namespace
}  // namespace netdp
