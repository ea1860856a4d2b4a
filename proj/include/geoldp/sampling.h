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

#ifndef GEOLDP_SAMPLING_H_
#define GEOLDP_SAMPLING_H_

#include <optional>
#include <string>
#include <vector>

#include "geoldp/channel.h"
#include "geoldp/distribution.h"
#include "geoldp/random.h"

namespace geoldp {

// Observed integer values on [0, n] with the stream that produced them.
struct SampleSet {
  int n = 0;
  std::vector<int> values;
  SeedLineage seed_lineage;
};

// Prior family used by the benchmark.
struct PriorSpec {
  enum class Kind { kBinomial, kKPoint };

  Kind kind = Kind::kBinomial;
  double success_probability = 0.5;  // binomial
  int support_size = 4;              // k-point
  // k-point only: fixes the support instead of drawing it.
  std::optional<std::vector<int>> fixed_support;

  static PriorSpec Binomial(double p = 0.5);
  static PriorSpec KPoint(int k);

  // "binomial" or "<k>-point".
  std::string Name() const;

  // Throws InvalidArgumentError if the spec is inconsistent with [0, n].
  void Validate(int n) const;
};

// Binomial(n, p) weights computed in log space; sums to 1 within 1e-12.
Distribution BinomialPrior(int n, double success_probability);

// Random distribution supported on k distinct points of [0, n]. The points
// are drawn uniformly without replacement; their weights are uniform on the
// simplex (normalized standard exponentials). Requires 2 <= k <= n + 1.
Distribution KPointPrior(int n, int k, RandomStream& rng);

// Same with the support fixed; only the weights are random.
Distribution KPointPrior(int n, const std::vector<int>& support,
                         RandomStream& rng);

// Materializes a PriorSpec on [0, n]. `rng` is only consumed by k-point
// priors.
Distribution MakePrior(const PriorSpec& spec, int n, RandomStream& rng);

// `count` i.i.d. draws by inverse CDF over 0..n.
SampleSet DrawSamples(const Distribution& dist, int count, RandomStream& rng);

// Passes every value through the channel.
SampleSet Obfuscate(const Channel& channel, const SampleSet& samples,
                    RandomStream& rng);

// Relative frequencies of the values. Throws on an empty set.
Distribution Empirical(const SampleSet& samples);

}  // namespace geoldp

#endif  // GEOLDP_SAMPLING_H_
