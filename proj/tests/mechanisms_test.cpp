// Copyright 2026 The privcalc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "privcalc/combinators.hpp"
#include "privcalc/mechanisms.hpp"
#include "privcalc/rng.hpp"
#include "test_util.hpp"

namespace privcalc {
namespace {

using testutil::int_dataset;
using testutil::int_schema;
using testutil::real_dataset;
using testutil::real_schema;

Domain int_domain() { return Domain::data(int_schema()); }

// ---------------------------------------------------------------------------
// Laplace

TEST(LaplaceTest, RejectsNonpositiveScale) {
  EXPECT_PRIVCALC_ERROR(laplace_noise(0.0), ErrorKind::kNonpositiveScale);
  EXPECT_PRIVCALC_ERROR(laplace_noise(-1.0), ErrorKind::kNonpositiveScale);
}

TEST(LaplaceTest, PrivacyMapIsDistanceOverScale) {
  Measurement m = laplace_noise(2.0);
  EXPECT_EQ(m.loss_at(1.0).epsilon, 0.5);
  EXPECT_EQ(m.loss_at(3.0).epsilon, 1.5);
  EXPECT_TRUE(m.loss_at(0.0).is_zero());
  EXPECT_FALSE(m.is_enumerable());
  EXPECT_PRIVCALC_ERROR(m.enumerate(Value(0.0)), ErrorKind::kNotEnumerable);
}

TEST(LaplaceTest, Replays) {
  Measurement m = laplace_noise(1.0);
  Rng a(31), b(31);
  EXPECT_EQ(m(Value(5.0), a), m(Value(5.0), b));
}

TEST(LaplaceTest, AbsoluteErrorQuantileMatchesTheory) {
  // [DERIVED] Pr[|Lap(b)| > b ln(1/beta)] = beta, so the 0.95-quantile of
  // |X| at b = 1 is ln 20. Monte Carlo at 1e6 draws, 2% tolerance.
  const int n = 1000000;
  std::vector<double> abs_draws(n);
  Rng rng(1234);
  for (int i = 0; i < n; ++i) abs_draws[i] = std::abs(rng.next_laplace(1.0));
  auto q95 = abs_draws.begin() + static_cast<int>(0.95 * n);
  std::nth_element(abs_draws.begin(), q95, abs_draws.end());
  const double expect = std::log(20.0);
  EXPECT_NEAR(*q95, expect, 0.02 * expect);
}

TEST(LaplaceTest, NoiseIsCentered) {
  Measurement m = laplace_noise(1.0);
  Rng rng(77);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) sum += m(Value(10.0), rng).as_real();
  // Mean 10, sd sqrt(2)/sqrt(n) ~ 0.003; generous band.
  EXPECT_NEAR(sum / n, 10.0, 0.05);
}

// ---------------------------------------------------------------------------
// Randomized response

TEST(RandomizedResponseTest, RejectsInvalidProbability) {
  EXPECT_PRIVCALC_ERROR(randomized_response(0.4), ErrorKind::kInvalidProbability);
  EXPECT_PRIVCALC_ERROR(randomized_response(1.0), ErrorKind::kInvalidProbability);
  EXPECT_PRIVCALC_ERROR(randomized_response(std::nan("")),
                        ErrorKind::kInvalidProbability);
}

TEST(RandomizedResponseTest, EpsilonIsLogOdds) {
  // [PAPER] eps = ln(p / (1 - p)).
  EXPECT_DOUBLE_EQ(randomized_response(0.75).loss_at(1.0).epsilon,
                   std::log(3.0));
  EXPECT_DOUBLE_EQ(randomized_response(0.9).loss_at(1.0).epsilon,
                   std::log(9.0));
  EXPECT_DOUBLE_EQ(randomized_response(0.5).loss_at(1.0).epsilon, 0.0);
}

TEST(RandomizedResponseTest, ExactDistribution) {
  OutcomeDistribution dist = randomized_response(0.75).enumerate(Value(true));
  ASSERT_EQ(dist.size(), 2u);
  for (const OutcomePoint& p : dist) {
    if (p.value == Value(true)) EXPECT_DOUBLE_EQ(p.probability, 0.75);
    if (p.value == Value(false)) EXPECT_DOUBLE_EQ(p.probability, 0.25);
  }
}

TEST(RandomizedResponseTest, EmpiricalFlipRate) {
  Measurement m = randomized_response(0.75);
  Rng rng(55);
  int truthful = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    if (m(Value(true), rng).as_bool()) ++truthful;
  }
  EXPECT_NEAR(static_cast<double>(truthful) / n, 0.75, 0.005);
}

// ---------------------------------------------------------------------------
// Noisy dataset statistics

TEST(NoisyCountTest, PrivacyMapPerMetric) {
  EXPECT_PRIVCALC_ERROR(noisy_count(int_domain(), Metric::symmetric(), 0.0),
                        ErrorKind::kNonpositiveEpsilon);

  Measurement sym = noisy_count(int_domain(), Metric::symmetric(), 1.0);
  EXPECT_EQ(sym.loss_at(1.0).epsilon, 1.0);
  EXPECT_EQ(sym.loss_at(2.0).epsilon, 2.0);

  // [PAPER] under bounded DP the size is public: counting is free.
  Measurement chg = noisy_count(int_domain(), Metric::change_one(), 1.0);
  EXPECT_EQ(chg.loss_at(1.0).epsilon, 0.0);
}

TEST(NoisyCountTest, CentersOnTheCount) {
  Measurement m = noisy_count(int_domain(), Metric::symmetric(), 1.0);
  Rng rng(2);
  double sum = 0.0;
  const int n = 50000;
  for (int i = 0; i < n; ++i) {
    sum += m(Value(int_dataset({4, 5, 6})), rng).as_real();
  }
  EXPECT_NEAR(sum / n, 3.0, 0.05);
}

TEST(NoisyCountTest, ReplaysAndIgnoresRecordOrder) {
  Measurement m = noisy_count(int_domain(), Metric::symmetric(), 0.5);
  Rng a(9), b(9);
  // Datasets canonicalize, so permuted construction gives identical answers.
  EXPECT_EQ(m(Value(int_dataset({3, 1, 2})), a),
            m(Value(int_dataset({2, 3, 1})), b));
}

TEST(NoisySumTest, LossIsEpsilonUnderBothMetrics) {
  EXPECT_PRIVCALC_ERROR(
      noisy_sum(int_domain(), Metric::symmetric(), "v", Bounds{5.0, -5.0}, 1.0),
      ErrorKind::kBoundsInverted);

  // The noise scale adapts to the metric's sensitivity, so the budget is
  // epsilon either way.
  for (Metric metric : {Metric::symmetric(), Metric::change_one()}) {
    Measurement m = noisy_sum(int_domain(), metric, "v", Bounds{-2.0, 5.0}, 0.7);
    EXPECT_DOUBLE_EQ(m.loss_at(1.0).epsilon, 0.7) << metric.name();
  }
}

TEST(NoisySumTest, CentersOnTheClampedSum) {
  Measurement m =
      noisy_sum(int_domain(), Metric::symmetric(), "v", Bounds{0.0, 10.0}, 2.0);
  Rng rng(8);
  double sum = 0.0;
  const int n = 50000;
  for (int i = 0; i < n; ++i) {
    // 25 clamps to 10: true clamped sum is 1 + 2 + 10 = 13.
    sum += m(Value(int_dataset({1, 2, 25})), rng).as_real();
  }
  EXPECT_NEAR(sum / n, 13.0, 0.2);
}

TEST(NoisyAverageTest, SplitsBudgetAcrossSumAndCount) {
  Measurement m = noisy_average(int_domain(), Metric::symmetric(), "v", 1.0);
  // eps/2 for the sum + eps/2 for the count.
  EXPECT_DOUBLE_EQ(m.loss_at(1.0).epsilon, 1.0);
}

TEST(NoisyAverageTest, EmptyInputYieldsZero) {
  Measurement m = noisy_average(int_domain(), Metric::symmetric(), "v", 1.0);
  Rng rng(4);
  EXPECT_EQ(m(Value(int_dataset({})), rng).as_real(), 0.0);
}

TEST(NoisyAverageTest, CentersOnTheClampedMean) {
  Measurement m = noisy_average(int_domain(), Metric::symmetric(), "v", 4.0);
  Rng rng(6);
  double sum = 0.0;
  const int n = 20000;
  Dataset data = int_dataset(std::vector<int64_t>(50, 1));  // all clamp to 1
  for (int i = 0; i < n; ++i) {
    sum += m(Value(data), rng).as_real();
  }
  EXPECT_NEAR(sum / n, 1.0, 0.05);
}

}  // namespace
}  // namespace privcalc
