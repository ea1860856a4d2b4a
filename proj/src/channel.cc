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

#include "geoldp/channel.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "geoldp/errors.h"

namespace geoldp {
namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Largest admissible gap between a^d built by repeated multiplication and
// exp(-eps d).
constexpr double kPowerDriftTolerance = 1e-12;

// Ratio-based epsilon of a single (numerator, denominator) pair. Both zero
// means the pair imposes no constraint.
double LogRatio(double num, double den) {
  if (num == 0.0 && den == 0.0) return 0.0;
  if (num == 0.0) return 0.0;  // ln(0/x) is -inf; never the maximum.
  if (den == 0.0) return kInfinity;
  return std::log(num / den);
}

}  // namespace

PrivacyLevel PrivacyLevel::FromEpsilon(double epsilon) {
  if (!std::isfinite(epsilon) || !(epsilon > 0.0)) {
    throw InvalidArgumentError("PrivacyLevel: epsilon must be finite and > 0");
  }
  return PrivacyLevel(epsilon, std::exp(-epsilon));
}

std::string MechanismKindName(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::kGeometric:
      return "geometric";
    case MechanismKind::kKrr:
      return "krr";
    case MechanismKind::kCustom:
      return "custom";
  }
  return "custom";
}

Channel::Channel(Matrix matrix, MechanismKind kind)
    : matrix_(std::move(matrix)), kind_(kind) {
  if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
    throw InvalidArgumentError("Channel: matrix must be square and non-empty");
  }
  const int size = this->size();
  cumulative_.resize(static_cast<size_t>(size) * size);
  for (int i = 0; i < size; ++i) {
    double sum = 0.0;
    int last_positive = -1;
    for (int j = 0; j < size; ++j) {
      const double c = matrix_(i, j);
      if (!std::isfinite(c) || c < 0.0) {
        throw InvalidArgumentError("Channel: entry (" + std::to_string(i) +
                                   ", " + std::to_string(j) +
                                   ") is negative or not finite");
      }
      sum += c;
      cumulative_[static_cast<size_t>(i) * size + j] = sum;
      if (c > 0.0) last_positive = j;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw InvalidArgumentError("Channel: row " + std::to_string(i) +
                                 " sums to " + std::to_string(sum));
    }
    for (int j = last_positive; j < size; ++j) {
      cumulative_[static_cast<size_t>(i) * size + j] = 1.0;
    }
  }
}

Channel Channel::Identity(int n) {
  if (n < 0) throw InvalidArgumentError("Identity: n must be >= 0");
  return Channel(Matrix::Identity(n + 1, n + 1), MechanismKind::kCustom);
}

int Channel::Apply(int x, RandomStream& rng) const {
  if (x < 0 || x > n()) {
    throw InvalidArgumentError("Apply: value " + std::to_string(x) +
                               " outside [0, " + std::to_string(n()) + "]");
  }
  const double u = rng.Uniform();
  const auto begin = cumulative_.begin() + static_cast<ptrdiff_t>(x) * size();
  const auto it = std::upper_bound(begin, begin + size(), u);
  return static_cast<int>(it - begin);
}

GroundMetric GroundMetric::AbsoluteDifference() {
  return GroundMetric([](int i, int j) { return std::abs(i - j) * 1.0; });
}

GroundMetric GroundMetric::Scaled(double factor) const {
  return GroundMetric([d = d_, factor](int i, int j) { return factor * d(i, j); });
}

void GroundMetric::Validate(int n) const {
  for (int i = 0; i <= n; ++i) {
    if ((*this)(i, i) != 0.0) {
      throw InvalidArgumentError("GroundMetric: d(i,i) != 0");
    }
    for (int j = 0; j <= n; ++j) {
      const double dij = (*this)(i, j);
      if (!(dij >= 0.0) || dij != (*this)(j, i)) {
        throw InvalidArgumentError("GroundMetric: negative or asymmetric");
      }
      for (int k = 0; k <= n; ++k) {
        if (dij > (*this)(i, k) + (*this)(k, j) + 1e-12 * (1.0 + dij)) {
          throw InvalidArgumentError("GroundMetric: triangle inequality fails");
        }
      }
    }
  }
}

Channel BuildTruncatedGeometric(int n, const PrivacyLevel& level) {
  if (n < 1) {
    throw InvalidArgumentError(
        "BuildTruncatedGeometric: domain [0, n] needs n >= 1");
  }
  const double a = level.alpha();
  std::vector<double> power(n + 1);
  power[0] = 1.0;
  for (int d = 1; d <= n; ++d) {
    power[d] = power[d - 1] * a;
    if (std::abs(power[d] - std::exp(-level.epsilon() * d)) >
        kPowerDriftTolerance) {
      throw Error("BuildTruncatedGeometric: power drift exceeds tolerance");
    }
  }
  const double boundary = 1.0 / (1.0 + a);
  const double interior = (1.0 - a) / (1.0 + a);
  Matrix g(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) {
    g(i, 0) = boundary * power[i];
    for (int j = 1; j < n; ++j) g(i, j) = interior * power[std::abs(i - j)];
    g(i, n) = boundary * power[n - i];
  }
  return Channel(std::move(g), MechanismKind::kGeometric);
}

Channel BuildKrr(int k, const PrivacyLevel& level) {
  if (k < 2) throw InvalidArgumentError("BuildKrr: k must be >= 2");
  const double e = std::exp(level.epsilon());
  const double denom = (k - 1) + e;
  Matrix c = Matrix::Constant(k, k, 1.0 / denom);
  c.diagonal().setConstant(e / denom);
  return Channel(std::move(c), MechanismKind::kKrr);
}

double TightestLdpEpsilon(const Channel& channel) {
  const int size = channel.size();
  double eps = 0.0;
  for (int y = 0; y < size; ++y) {
    double lo = kInfinity, hi = 0.0;
    for (int x = 0; x < size; ++x) {
      lo = std::min(lo, channel(x, y));
      hi = std::max(hi, channel(x, y));
    }
    eps = std::max(eps, LogRatio(hi, lo));
  }
  return eps;
}

double TightestDPrivacyEpsilon(const Channel& channel,
                               const GroundMetric& metric) {
  const int size = channel.size();
  metric.Validate(channel.n());
  double eps = 0.0;
  for (int x = 0; x < size; ++x) {
    for (int xp = 0; xp < size; ++xp) {
      if (x == xp) continue;
      const double d = metric(x, xp);
      for (int y = 0; y < size; ++y) {
        const double r = LogRatio(channel(x, y), channel(xp, y));
        if (r <= 0.0) continue;
        if (d == 0.0 || std::isinf(r)) return kInfinity;
        eps = std::max(eps, r / d);
      }
    }
  }
  return eps;
}

bool SatisfiesLdp(const Channel& channel, double claimed_epsilon) {
  return TightestLdpEpsilon(channel) <= claimed_epsilon + 1e-9;
}

bool SatisfiesDPrivacy(const Channel& channel, double claimed_epsilon,
                       const GroundMetric& metric) {
  return TightestDPrivacyEpsilon(channel, metric) <= claimed_epsilon + 1e-9;
}

PrivacyLevel CalibrateEpsilonForRadius(double target_ratio_log, int radius) {
  if (!(target_ratio_log > 0.0) || radius < 1) {
    throw InvalidArgumentError(
        "CalibrateEpsilonForRadius: inputs must be positive");
  }
  return PrivacyLevel::FromEpsilon(target_ratio_log / radius);
}

}  // namespace geoldp
