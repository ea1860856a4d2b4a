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

#include "geoldp/estimator.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "geoldp/errors.h"
#include "geoldp/random.h"
#include "geoldp/sampling.h"

namespace geoldp {
namespace {

constexpr double kLn2 = std::numbers::ln2;

std::vector<double> Push(const Distribution& p, const Channel& c) {
  std::vector<double> out(c.size(), 0.0);
  for (int i = 0; i < c.size(); ++i) {
    for (int j = 0; j < c.size(); ++j) out[j] += p[i] * c(i, j);
  }
  return out;
}

// Random strictly positive distribution (normalized exponentials).
Distribution RandomFullSupport(int n, RandomStream& rng) {
  std::vector<double> w(n + 1);
  double total = 0.0;
  for (double& v : w) total += (v = rng.StandardExponential() + 1e-3);
  for (double& v : w) v /= total;
  return Distribution(std::move(w));
}

Channel RandomChannel(int n, RandomStream& rng) {
  Matrix m(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) {
    double total = 0.0;
    for (int j = 0; j <= n; ++j) total += (m(i, j) = rng.Uniform() + 1e-3);
    m.row(i) /= total;
  }
  return Channel(std::move(m));
}

TEST(LogLikelihoodTest, EqualsNegativeEntropyAtTheFit) {
  const Channel g = BuildTruncatedGeometric(6, PrivacyLevel::FromEpsilon(0.7));
  RandomStream rng(1);
  const Distribution theta = RandomFullSupport(6, rng);
  const Distribution q(Push(theta, g));
  double neg_entropy = 0.0;
  for (double v : q.weights()) neg_entropy += v * std::log(v);
  EXPECT_NEAR(LogLikelihood(theta, g, q), neg_entropy, 1e-14);
}

TEST(LogLikelihoodTest, IdentityUniform) {
  const auto u = Distribution::Uniform(9);
  EXPECT_NEAR(LogLikelihood(u, Channel::Identity(9), u), std::log(0.1), 1e-15);
}

TEST(LogLikelihoodTest, HandEvaluatedGeometric) {
  const Channel g = BuildTruncatedGeometric(2, PrivacyLevel::FromEpsilon(kLn2));
  EXPECT_NEAR(LogLikelihood(Distribution::Uniform(2), g,
                            Distribution::PointMass(2, 0)),
              std::log(7.0 / 18), 1e-15);
}

TEST(LogLikelihoodTest, MinusInfinityWhenObservationIsImpossible) {
  EXPECT_EQ(LogLikelihood(Distribution::PointMass(2, 0), Channel::Identity(2),
                          Distribution::PointMass(2, 1)),
            -std::numeric_limits<double>::infinity());
}

TEST(LogLikelihoodTest, DimensionMismatch) {
  EXPECT_THROW(LogLikelihood(Distribution::Uniform(2), Channel::Identity(3),
                             Distribution::Uniform(3)),
               DimensionMismatchError);
}

TEST(IbuStepTest, HandEvaluatedGeometric) {
  const Channel g = BuildTruncatedGeometric(2, PrivacyLevel::FromEpsilon(kLn2));
  const Distribution p = IbuStep(g, Distribution::PointMass(2, 0),
                                 Distribution::Uniform(2));
  EXPECT_NEAR(p[0], 4.0 / 7, 1e-15);
  EXPECT_NEAR(p[1], 2.0 / 7, 1e-15);
  EXPECT_NEAR(p[2], 1.0 / 7, 1e-15);
}

TEST(IbuStepTest, IdentityChannelReturnsTheObservation) {
  RandomStream rng(2);
  const Distribution q = RandomFullSupport(5, rng);
  const Distribution p = IbuStep(Channel::Identity(5), q, Distribution::Uniform(5));
  for (int i = 0; i <= 5; ++i) EXPECT_NEAR(p[i], q[i], 1e-15);
}

TEST(IbuStepTest, Errors) {
  const Channel g = BuildTruncatedGeometric(2, PrivacyLevel::FromEpsilon(1.0));
  EXPECT_THROW(IbuStep(g, Distribution::Uniform(3), Distribution::Uniform(2)),
               DimensionMismatchError);
  EXPECT_THROW(IbuStep(g, Distribution::Uniform(2), Distribution::PointMass(2, 1)),
               InvalidArgumentError);
  // Column 2 never occurs under the channel but carries empirical mass.
  Matrix m(3, 3);
  m << 0.5, 0.5, 0.0, 0.5, 0.5, 0.0, 0.0, 1.0, 0.0;
  EXPECT_THROW(IbuStep(Channel(m), Distribution::PointMass(2, 2),
                       Distribution::Uniform(2)),
               ZeroDenominatorError);
}

TEST(IbuStepPropertyTest, OutputIsDistributionAndLikelihoodNeverDrops) {
  RandomStream rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng.UniformInt(12));
    const Channel c = trial % 3 == 0
                          ? BuildTruncatedGeometric(
                                n, PrivacyLevel::FromEpsilon(0.05 + rng.Uniform()))
                          : RandomChannel(n, rng);
    const Distribution q = trial % 2 == 0
                               ? RandomFullSupport(n, rng)
                               : Distribution::PointMass(
                                     n, static_cast<int>(rng.UniformInt(n + 1)));
    const Distribution p = RandomFullSupport(n, rng);
    const Distribution next = IbuStep(c, q, p);  // validates the invariants
    double sum = 0.0;
    for (double v : next.weights()) {
      EXPECT_GE(v, 0.0);
      sum += v;
    }
    EXPECT_NEAR(sum, 1.0, 1e-10);
    EXPECT_GE(LogLikelihood(next, c, q), LogLikelihood(p, c, q) - 1e-9);
  }
}

TEST(IbuStepPropertyTest, RealizableObservationIsAFixedPoint) {
  RandomStream rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng.UniformInt(15));
    const Channel c = RandomChannel(n, rng);
    const Distribution p = RandomFullSupport(n, rng);
    const Distribution q(Push(p, c));
    const Distribution next = IbuStep(c, q, p);
    for (int i = 0; i <= n; ++i) EXPECT_NEAR(next[i], p[i], 1e-12);
  }
}

TEST(IbuStepPropertyTest, PermutationEquivariance) {
  RandomStream rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.UniformInt(8));
    const Channel c = RandomChannel(n, rng);
    const Distribution q = RandomFullSupport(n, rng);
    std::vector<int> perm(n + 1);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n; i > 0; --i) {
      std::swap(perm[i], perm[rng.UniformInt(i + 1)]);
    }
    Matrix pm(n + 1, n + 1);
    std::vector<double> pq(n + 1);
    for (int i = 0; i <= n; ++i) {
      pq[perm[i]] = q[i];
      for (int j = 0; j <= n; ++j) pm(perm[i], perm[j]) = c(i, j);
    }
    const IbuOptions opts{.max_iterations = 40, .tolerance = 0.0};
    const auto base = IbuRun(c, q, opts);
    const auto permuted = IbuRun(Channel(pm), Distribution(pq), opts);
    for (int i = 0; i <= n; ++i) {
      EXPECT_NEAR(permuted.estimate[perm[i]], base.estimate[i], 1e-12);
    }
  }
}

TEST(IbuRunTest, RecoversRealizablePriorOnSmallDomain) {
  const Channel g = BuildTruncatedGeometric(2, PrivacyLevel::FromEpsilon(kLn2));
  const Distribution pi({0.5, 0.3, 0.2});
  const Distribution q(Push(pi, g));
  const auto early = IbuRun(g, q, {.max_iterations = 10, .tolerance = 0.0});
  const auto result = IbuRun(g, q, {.max_iterations = 5000, .tolerance = 0.0});
  EXPECT_EQ(result.iterations_run, 5000);
  EXPECT_EQ(result.stop_reason, IbuStopReason::kMaxIterations);
  EXPECT_LT(L1Distance(result.estimate.weights(), pi.weights()), 1e-6);
  EXPECT_LT(L1Distance(result.estimate.weights(), pi.weights()),
            L1Distance(early.estimate.weights(), pi.weights()));
}

TEST(IbuRunTest, StopsAtOnceFromAFixedPoint) {
  const Channel g = BuildTruncatedGeometric(4, PrivacyLevel::FromEpsilon(0.5));
  const Distribution init({0.1, 0.2, 0.3, 0.25, 0.15});
  const Distribution q(Push(init, g));
  const auto result = IbuRun(g, q, init);
  EXPECT_EQ(result.iterations_run, 1);
  EXPECT_EQ(result.stop_reason, IbuStopReason::kTolerance);
  for (int i = 0; i <= 4; ++i) EXPECT_NEAR(result.estimate[i], init[i], 1e-12);
}

TEST(IbuRunTest, TraceIsMonotone) {
  const Channel g = BuildTruncatedGeometric(30, PrivacyLevel::FromEpsilon(0.2));
  RandomStream rng(6);
  const SampleSet s = DrawSamples(BinomialPrior(30, 0.4), 5000, rng);
  const Distribution q = Empirical(Obfuscate(g, s, rng));
  const auto result = IbuRun(g, q, {.max_iterations = 2000, .tolerance = 0.0});
  ASSERT_EQ(result.likelihood_trace.size(), 2000u);
  EXPECT_GE(result.likelihood_trace.front(),
            result.initial_log_likelihood - 1e-9);
  for (size_t k = 1; k < result.likelihood_trace.size(); ++k) {
    EXPECT_GE(result.likelihood_trace[k], result.likelihood_trace[k - 1] - 1e-9);
  }
}

TEST(IbuRunTest, RejectsBadArguments) {
  const Channel g = BuildTruncatedGeometric(2, PrivacyLevel::FromEpsilon(1.0));
  const auto q = Distribution::Uniform(2);
  EXPECT_THROW(IbuRun(g, q, Distribution::PointMass(2, 0)), InvalidArgumentError);
  EXPECT_THROW(IbuRun(g, q, {.max_iterations = 0, .tolerance = 0.0}),
               InvalidArgumentError);
}

TEST(InvertChannelTest, IdentityAndGeometric) {
  EXPECT_TRUE(InvertChannel(Channel::Identity(4)).isApprox(
      Matrix::Identity(5, 5)));
  const Channel g =
      BuildTruncatedGeometric(100, PrivacyLevel::FromEpsilon(kLn2 / 10));
  const Matrix residual =
      g.matrix() * InvertChannel(g) - Matrix::Identity(101, 101);
  EXPECT_LE(residual.cwiseAbs().maxCoeff(), 1e-8);
}

TEST(InvertChannelTest, KrrIsInvertible) {
  const Channel c = BuildKrr(101, PrivacyLevel::FromEpsilon(kLn2));
  const Matrix residual =
      c.matrix() * InvertChannel(c) - Matrix::Identity(101, 101);
  EXPECT_LE(residual.cwiseAbs().maxCoeff(), 1e-8);
}

TEST(InvertChannelTest, RankDeficientIsRejected) {
  Matrix m(3, 3);
  m << 0.2, 0.3, 0.5, 0.2, 0.3, 0.5, 0.1, 0.1, 0.8;
  EXPECT_THROW(InvertChannel(Channel(m)), SingularMatrixError);
  EXPECT_THROW(EstimateByInversion(Channel(m), Distribution::Uniform(2)),
               SingularMatrixError);
}

TEST(InversionEstimateTest, ExactPreimage) {
  const Channel g =
      BuildTruncatedGeometric(100, PrivacyLevel::FromEpsilon(kLn2 / 10));
  RandomStream rng(8);
  const Distribution pi = RandomFullSupport(100, rng);
  const auto r = EstimateByInversion(g, Distribution(Push(pi, g)));
  ASSERT_TRUE(r.is_distribution());
  EXPECT_LT(L1Distance(r.distribution->weights(), pi.weights()), 1e-8);
}

TEST(InversionEstimateTest, PointMassHasNoDistributionPreimage) {
  const Channel g =
      BuildTruncatedGeometric(100, PrivacyLevel::FromEpsilon(kLn2 / 10));
  const auto r = EstimateByInversion(g, Distribution::PointMass(100, 0));
  EXPECT_FALSE(r.is_distribution());
  EXPECT_LT(*std::min_element(r.raw.begin(), r.raw.end()), 0.0);
}

TEST(InversionEstimateTest, AgreesWithIbuLimitWhenAdmissible) {
  // Small domains with many samples make admissible inverse images common.
  RandomStream rng(9);
  int admissible = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 3;
    const Channel g = BuildTruncatedGeometric(n, PrivacyLevel::FromEpsilon(kLn2));
    const Distribution pi = RandomFullSupport(n, rng);
    const SampleSet s = DrawSamples(pi, 20000, rng);
    const Distribution q = Empirical(Obfuscate(g, s, rng));
    const auto r = EstimateByInversion(g, q);
    if (!r.is_distribution()) continue;
    ++admissible;
    const auto limit =
        IbuRun(g, q, {.max_iterations = 200000, .tolerance = 0.0});
    EXPECT_LE(L1Distance(r.distribution->weights(), limit.estimate.weights()),
              1e-4);
    // After the usual 5000 steps the iterate is already there unless the
    // preimage sits close to the simplex boundary, where EM slows down.
    const auto& w = r.distribution->weights();
    if (*std::min_element(w.begin(), w.end()) >= 1e-2) {
      const auto ibu = IbuRun(g, q, {.max_iterations = 5000, .tolerance = 0.0});
      EXPECT_LE(L1Distance(w, ibu.estimate.weights()), 1e-4);
    }
  }
  EXPECT_GT(admissible, 20);
}

}  // namespace
}  // namespace geoldp
