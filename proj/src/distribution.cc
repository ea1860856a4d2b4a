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

#include "geoldp/distribution.h"

#include <cmath>
#include <string>

#include "geoldp/errors.h"

namespace geoldp {

Distribution::Distribution(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty()) {
    throw InvalidArgumentError("Distribution: empty weight vector");
  }
  double sum = 0.0;
  for (size_t i = 0; i < weights_.size(); ++i) {
    const double w = weights_[i];
    if (!std::isfinite(w) || w < 0.0) {
      throw InvalidArgumentError("Distribution: weight " + std::to_string(i) +
                                 " is negative or not finite");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > kDistributionSumTolerance) {
    throw InvalidArgumentError("Distribution: weights sum to " +
                               std::to_string(sum) + ", expected 1");
  }
}

Distribution Distribution::Uniform(int n) {
  if (n < 0) throw InvalidArgumentError("Uniform: n must be >= 0");
  return Distribution(std::vector<double>(n + 1, 1.0 / (n + 1)));
}

Distribution Distribution::PointMass(int n, int at) {
  if (n < 0 || at < 0 || at > n) {
    throw InvalidArgumentError("PointMass: point outside [0, n]");
  }
  std::vector<double> w(n + 1, 0.0);
  w[at] = 1.0;
  return Distribution(std::move(w));
}

bool Distribution::HasFullSupport() const {
  for (double w : weights_) {
    if (!(w > 0.0)) return false;
  }
  return true;
}

double L1Distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DimensionMismatchError("L1Distance: length mismatch");
  }
  double d = 0.0;
  for (size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

}  // namespace geoldp
