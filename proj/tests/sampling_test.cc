// Copyright 2026 The geoldp Authors
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

#include "geoldp/sampling.h"

#include <cmath>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "geoldp/errors.h"
#include "geoldp/metrics.h"

namespace geoldp {
namespace {

TEST(RandomStreamTest, DeterministicAndKeyed) {
  auto a = RandomStream::Derive(1, 2, 3, StreamPurpose::kSamples);
  auto b = RandomStream::Derive(1, 2, 3, StreamPurpose::kSamples);
  auto c = RandomStream::Derive(1, 2, 3, StreamPurpose::kNoise);
  auto d = RandomStream::Derive(1, 2, 4, StreamPurpose::kSamples);
  bool c_differs = false, d_differs = false;
  for (int i = 0; i < 100; ++i) {
    const uint64_t x = a.NextU64();
    ASSERT_EQ(x, b.NextU64());
    c_differs |= x != c.NextU64();
    d_differs |= x != d.NextU64();
  }
  EXPECT_TRUE(c_differs);
  EXPECT_TRUE(d_differs);
  EXPECT_EQ(a.lineage().replicate_index, 3u);
  EXPECT_EQ(a.lineage().purpose, StreamPurpose::kSamples);
}

TEST(RandomStreamTest, RangesAndMoments) {
  RandomStream rng(17);
  double sum = 0.0, exp_sum = 0.0;
  constexpr int kDraws = 200000;
  for (int i = 0; i < kDraws; ++i) {
    const double u = rng.Uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    exp_sum += rng.StandardExponential();
    ASSERT_LT(rng.UniformInt(7), 7u);
  }
  EXPECT_NEAR(sum / kDraws, 0.5, 0.005);
  EXPECT_NEAR(exp_sum / kDraws, 1.0, 0.01);
  EXPECT_THROW(rng.UniformInt(0), InvalidArgumentError);
}

TEST(BinomialPriorTest, SmallCase) {
  const auto d = BinomialPrior(2, 0.5);
  EXPECT_NEAR(d[0], 0.25, 1e-15);
  EXPECT_NEAR(d[1], 0.5, 1e-15);
  EXPECT_NEAR(d[2], 0.25, 1e-15);
}

TEST(BinomialPriorTest, SymmetricWithMeanFifty) {
  const auto d = BinomialPrior(100, 0.5);
  double mean = 0.0, sum = 0.0;
  int mode = 0;
  for (int i = 0; i <= 100; ++i) {
    EXPECT_NEAR(d[i], d[100 - i], 1e-15);
    mean += i * d[i];
    sum += d[i];
    if (d[i] > d[mode]) mode = i;
  }
  EXPECT_EQ(mode, 50);
  EXPECT_NEAR(mean, 50.0, 1e-9);
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(BinomialPriorTest, SkewedMeanAndRange) {
  const auto d = BinomialPrior(40, 0.1);
  double mean = 0.0;
  for (int i = 0; i <= 40; ++i) mean += i * d[i];
  EXPECT_NEAR(mean, 4.0, 1e-9);
  EXPECT_THROW(BinomialPrior(10, 0.0), InvalidArgumentError);
  EXPECT_THROW(BinomialPrior(10, 1.0), InvalidArgumentError);
}

TEST(KPointPriorTest, FullSupportWhenKIsDomainSize) {
  RandomStream rng(21);
  const auto d = KPointPrior(6, 7, rng);
  EXPECT_TRUE(d.HasFullSupport());
}

TEST(KPointPriorTest, DeterministicForFixedSeed) {
  RandomStream a(5), b(5);
  EXPECT_EQ(KPointPrior(100, 4, a), KPointPrior(100, 4, b));
}

TEST(KPointPriorTest, HasExactlyKPoints) {
  RandomStream rng(22);
  for (int t = 0; t < 50; ++t) {
    const auto d = KPointPrior(100, 4, rng);
    int support = 0;
    for (double w : d.weights()) support += w > 0.0;
    EXPECT_EQ(support, 4);
  }
}

TEST(KPointPriorTest, SupportIsUniform) {
  RandomStream rng(23);
  std::vector<int> hits(101, 0);
  constexpr int kGenerations = 100000;
  for (int t = 0; t < kGenerations; ++t) {
    const auto d = KPointPrior(100, 4, rng);
    for (int i = 0; i <= 100; ++i) hits[i] += d[i] > 0.0;
  }
  for (int i = 0; i <= 100; ++i) {
    EXPECT_NEAR(hits[i] / static_cast<double>(kGenerations), 4.0 / 101, 0.005);
  }
}

TEST(KPointPriorTest, FixedSupport) {
  RandomStream rng(24);
  const auto d = KPointPrior(10, std::vector<int>{1, 4, 7}, rng);
  for (int i = 0; i <= 10; ++i) {
    EXPECT_EQ(d[i] > 0.0, i == 1 || i == 4 || i == 7);
  }
  EXPECT_THROW(KPointPrior(10, std::vector<int>{1, 1}, rng),
               InvalidArgumentError);
  EXPECT_THROW(KPointPrior(10, std::vector<int>{1, 11}, rng),
               InvalidArgumentError);
}

TEST(KPointPriorTest, RejectsBadK) {
  RandomStream rng(25);
  EXPECT_THROW(KPointPrior(10, 1, rng), InvalidArgumentError);
  EXPECT_THROW(KPointPrior(10, 12, rng), InvalidArgumentError);
}

TEST(DrawSamplesTest, PointMass) {
  RandomStream rng(31);
  const auto s = DrawSamples(Distribution::PointMass(9, 6), 1000, rng);
  EXPECT_EQ(s.n, 9);
  for (int v : s.values) EXPECT_EQ(v, 6);
  EXPECT_THROW(DrawSamples(Distribution::Uniform(2), 0, rng),
               InvalidArgumentError);
}

TEST(DrawSamplesTest, TwoPointFrequency) {
  RandomStream rng(32);
  const auto s = DrawSamples(Distribution::Uniform(1), 1'000'000, rng);
  EXPECT_NEAR(Empirical(s)[0], 0.5, 0.002);
}

TEST(DrawSamplesTest, BinomialRoundTrip) {
  const auto d = BinomialPrior(100, 0.5);
  RandomStream rng(33);
  EXPECT_LT(TotalVariation(Empirical(DrawSamples(d, 1'000'000, rng)), d), 0.005);
}

TEST(DrawSamplesTest, ConvergesForSeveralDistributions) {
  RandomStream prior_rng(34);
  const std::vector<Distribution> dists = {
      BinomialPrior(100, 0.5), BinomialPrior(30, 0.2),
      KPointPrior(100, 4, prior_rng), KPointPrior(20, 21, prior_rng),
      Distribution::Uniform(50)};
  for (size_t k = 0; k < dists.size(); ++k) {
    RandomStream rng = RandomStream::Derive(35, k, 0, StreamPurpose::kSamples);
    EXPECT_LE(TotalVariation(Empirical(DrawSamples(dists[k], 1'000'000, rng)),
                             dists[k]),
              0.01);
  }
}

TEST(DrawSamplesTest, SameStreamSameSamples) {
  const auto d = BinomialPrior(100, 0.3);
  auto a = RandomStream::Derive(9, 1, 2, StreamPurpose::kSamples);
  auto b = RandomStream::Derive(9, 1, 2, StreamPurpose::kSamples);
  const auto sa = DrawSamples(d, 10000, a);
  EXPECT_EQ(sa.values, DrawSamples(d, 10000, b).values);
  EXPECT_EQ(sa.seed_lineage.master_seed, 9u);
  EXPECT_EQ(sa.seed_lineage.cell_index, 1u);
}

TEST(DrawSamplesTest, SkipsZeroWeightValues) {
  RandomStream rng(36);
  const Distribution d({0.0, 0.5, 0.0, 0.5, 0.0});
  for (int v : DrawSamples(d, 10000, rng).values) EXPECT_TRUE(v == 1 || v == 3);
}

TEST(EmpiricalTest, Counts) {
  const auto d = Empirical({.n = 1, .values = {0, 0, 1, 1}, .seed_lineage = {}});
  EXPECT_EQ(d[0], 0.5);
  EXPECT_EQ(d[1], 0.5);
  const auto point =
      Empirical({.n = 5, .values = {3, 3, 3}, .seed_lineage = {}});
  EXPECT_EQ(point, Distribution::PointMass(5, 3));
  EXPECT_THROW(Empirical({.n = 3, .values = {}, .seed_lineage = {}}),
               InvalidArgumentError);
  EXPECT_THROW(Empirical({.n = 3, .values = {4}, .seed_lineage = {}}),
               InvalidArgumentError);
}

TEST(ObfuscateTest, NoisyBinomialIsFlatterButReconstructible) {
  const int n = 100;
  const auto prior = BinomialPrior(n, 0.5);
  const Channel g =
      BuildTruncatedGeometric(n, PrivacyLevel::FromEpsilon(std::log(2.0) / 10));
  RandomStream rng(37);
  const auto noisy = Empirical(Obfuscate(g, DrawSamples(prior, 100000, rng), rng));
  // The hump widens: the noisy empirical is much further from the prior
  // than sampling error alone would explain.
  EXPECT_GT(Kantorovich1d(prior, noisy), 5.0);
  EXPECT_LT(noisy[50], prior[50]);
}

}  // namespace
}  // namespace geoldp
