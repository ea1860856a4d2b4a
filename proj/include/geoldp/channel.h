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

#ifndef GEOLDP_CHANNEL_H_
#define GEOLDP_CHANNEL_H_

#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "geoldp/random.h"

namespace geoldp {

using Matrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Row-sum tolerance for a valid channel.
inline constexpr double kRowSumTolerance = 1e-12;

// Privacy budget epsilon > 0 together with alpha = exp(-epsilon).
class PrivacyLevel {
 public:
  // Throws InvalidArgumentError unless epsilon is finite and positive.
  static PrivacyLevel FromEpsilon(double epsilon);

  double epsilon() const { return epsilon_; }
  double alpha() const { return alpha_; }

 private:
  PrivacyLevel(double epsilon, double alpha)
      : epsilon_(epsilon), alpha_(alpha) {}

  double epsilon_;
  double alpha_;
};

enum class MechanismKind { kGeometric, kKrr, kCustom };

std::string MechanismKindName(MechanismKind kind);

// A row-stochastic matrix over [0, n] x [0, n]; entry (i, j) is the
// probability of reporting j when the true value is i. Immutable.
class Channel {
 public:
  // Validates squareness, non-negativity and row sums.
  explicit Channel(Matrix matrix, MechanismKind kind = MechanismKind::kCustom);

  static Channel Identity(int n);

  int n() const { return static_cast<int>(matrix_.rows()) - 1; }
  int size() const { return static_cast<int>(matrix_.rows()); }
  MechanismKind kind() const { return kind_; }
  const Matrix& matrix() const { return matrix_; }
  double operator()(int i, int j) const { return matrix_(i, j); }

  std::span<const double> Row(int i) const {
    return {matrix_.data() + static_cast<size_t>(i) * size(),
            static_cast<size_t>(size())};
  }

  // Samples a report for true value x by inverse CDF over the row, scanning
  // outputs in the order 0..n. Throws InvalidArgumentError if x is outside
  // [0, n].
  int Apply(int x, RandomStream& rng) const;

 private:
  Matrix matrix_;
  MechanismKind kind_;
  // Row-wise cumulative sums; the entry at the last positive-probability
  // column of each row and all later ones are pinned to exactly 1.
  std::vector<double> cumulative_;
};

// Distance on [0, n]. Defaults to |i - j|.
class GroundMetric {
 public:
  using Function = std::function<double(int, int)>;

  GroundMetric() : GroundMetric(AbsoluteDifference()) {}
  explicit GroundMetric(Function d) : d_(std::move(d)) {}

  static GroundMetric AbsoluteDifference();
  GroundMetric Scaled(double factor) const;

  double operator()(int i, int j) const { return d_(i, j); }

  // Checks d(i,i) = 0, symmetry, non-negativity and the triangle inequality
  // over every triple of [0, n]. Throws InvalidArgumentError on violation.
  void Validate(int n) const;

 private:
  Function d_;
};

// Truncated geometric mechanism on [0, n]: interior columns carry
// (1-a)/(1+a) a^|i-j|, column 0 carries a^i/(1+a) and column n carries
// a^(n-i)/(1+a), with a = level.alpha(). Requires n >= 1.
Channel BuildTruncatedGeometric(int n, const PrivacyLevel& level);

// k-ary randomized response: e^eps/(k-1+e^eps) on the diagonal and
// 1/(k-1+e^eps) elsewhere. Requires k >= 2. The channel domain is [0, k-1].
Channel BuildKrr(int k, const PrivacyLevel& level);

// Smallest epsilon such that C(x,y) <= e^eps C(x',y) for all x, x', y.
// +infinity if a column mixes zero and non-zero entries.
double TightestLdpEpsilon(const Channel& channel);

// Smallest epsilon such that C(x,y) <= e^(eps d(x,x')) C(x',y) for all
// x != x', y. +infinity on zero/non-zero mixtures or when d(x,x') = 0 for a
// pair with different rows.
double TightestDPrivacyEpsilon(const Channel& channel,
                               const GroundMetric& metric = {});

// True when the channel satisfies the claimed level (tightest <= claimed +
// 1e-9).
bool SatisfiesLdp(const Channel& channel, double claimed_epsilon);
bool SatisfiesDPrivacy(const Channel& channel, double claimed_epsilon,
                       const GroundMetric& metric = {});

// epsilon = target_ratio_log / radius: the geometric likelihood ratio between
// a value and anything within `radius` of it is then at most
// e^target_ratio_log.
PrivacyLevel CalibrateEpsilonForRadius(double target_ratio_log, int radius);

}  // namespace geoldp

#endif  // GEOLDP_CHANNEL_H_
