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

#ifndef GEOLDP_DISTRIBUTION_H_
#define GEOLDP_DISTRIBUTION_H_

#include <span>
#include <vector>

namespace geoldp {

// Tolerance on the total mass of a Distribution.
inline constexpr double kDistributionSumTolerance = 1e-10;

// A probability vector over the integer domain [0, n].
class Distribution {
 public:
  // Validates: non-empty, finite, non-negative, sums to 1 within
  // kDistributionSumTolerance. Throws InvalidArgumentError otherwise.
  explicit Distribution(std::vector<double> weights);

  static Distribution Uniform(int n);
  static Distribution PointMass(int n, int at);

  // Domain bound; the vector has n() + 1 entries.
  int n() const { return static_cast<int>(weights_.size()) - 1; }
  int size() const { return static_cast<int>(weights_.size()); }

  double operator[](int i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }
  const std::vector<double>& vector() const { return weights_; }

  bool HasFullSupport() const;

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  std::vector<double> weights_;
};

// L1 distance between two weight vectors of equal length.
double L1Distance(std::span<const double> a, std::span<const double> b);

}  // namespace geoldp

#endif  // GEOLDP_DISTRIBUTION_H_
