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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "geoldp/errors.h"

namespace geoldp {

PriorSpec PriorSpec::Binomial(double p) {
  PriorSpec spec;
  spec.kind = Kind::kBinomial;
  spec.success_probability = p;
  return spec;
}

PriorSpec PriorSpec::KPoint(int k) {
  PriorSpec spec;
  spec.kind = Kind::kKPoint;
  spec.support_size = k;
  return spec;
}

std::string PriorSpec::Name() const {
  if (kind == Kind::kBinomial) return "binomial";
  return std::to_string(support_size) + "-point";
}

void PriorSpec::Validate(int n) const {
  if (kind == Kind::kBinomial) {
    if (!(success_probability > 0.0 && success_probability < 1.0)) {
      throw InvalidArgumentError("binomial prior: p must lie in (0, 1)");
    }
    return;
  }
  if (support_size < 2 || support_size > n + 1) {
    throw InvalidArgumentError("k-point prior: k must lie in [2, n + 1]");
  }
  if (fixed_support) {
    if (static_cast<int>(fixed_support->size()) != support_size) {
      throw InvalidArgumentError("k-point prior: support has wrong size");
    }
    std::vector<int> sorted = *fixed_support;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
        sorted.front() < 0 || sorted.back() > n) {
      throw InvalidArgumentError(
          "k-point prior: support points must be distinct and in [0, n]");
    }
  }
}

Distribution BinomialPrior(int n, double success_probability) {
  if (n < 0) throw InvalidArgumentError("BinomialPrior: n must be >= 0");
  if (!(success_probability > 0.0 && success_probability < 1.0)) {
    throw InvalidArgumentError("BinomialPrior: p must lie in (0, 1)");
  }
  const double log_p = std::log(success_probability);
  // log(1 - p) is exact at p = 1/2, which keeps the symmetric case symmetric.
  const double log_q = success_probability < 0.25
                           ? std::log1p(-success_probability)
                           : std::log(1.0 - success_probability);
  const double log_n_fact = std::lgamma(n + 1.0);
  std::vector<double> w(n + 1);
  double total = 0.0;
  for (int i = 0; i <= n; ++i) {
    // Grouped so that p = 1/2 gives bit-identical mirrored weights.
    const double log_w = log_n_fact - (std::lgamma(i + 1.0) +
                                       std::lgamma(n - i + 1.0)) +
                         (i * log_p + (n - i) * log_q);
    w[i] = std::exp(log_w);
    total += w[i];
  }
  for (double& v : w) v /= total;
  return Distribution(std::move(w));
}

Distribution KPointPrior(int n, const std::vector<int>& support,
                         RandomStream& rng) {
  PriorSpec spec = PriorSpec::KPoint(static_cast<int>(support.size()));
  spec.fixed_support = support;
  spec.Validate(n);
  std::vector<double> draws(support.size());
  double total = 0.0;
  for (double& e : draws) {
    e = rng.StandardExponential();
    total += e;
  }
  std::vector<double> w(n + 1, 0.0);
  for (size_t m = 0; m < support.size(); ++m) w[support[m]] = draws[m] / total;
  return Distribution(std::move(w));
}

Distribution KPointPrior(int n, int k, RandomStream& rng) {
  PriorSpec::KPoint(k).Validate(n);
  // Partial Fisher-Yates over 0..n.
  std::vector<int> pool(n + 1);
  std::iota(pool.begin(), pool.end(), 0);
  for (int m = 0; m < k; ++m) {
    const auto pick = m + static_cast<int>(rng.UniformInt(n + 1 - m));
    std::swap(pool[m], pool[pick]);
  }
  pool.resize(k);
  return KPointPrior(n, pool, rng);
}

Distribution MakePrior(const PriorSpec& spec, int n, RandomStream& rng) {
  spec.Validate(n);
  if (spec.kind == PriorSpec::Kind::kBinomial) {
    return BinomialPrior(n, spec.success_probability);
  }
  if (spec.fixed_support) return KPointPrior(n, *spec.fixed_support, rng);
  return KPointPrior(n, spec.support_size, rng);
}

SampleSet DrawSamples(const Distribution& dist, int count, RandomStream& rng) {
  if (count < 1) throw InvalidArgumentError("DrawSamples: count must be >= 1");
  const int size = dist.size();
  std::vector<double> cdf(size);
  double running = 0.0;
  int last_positive = 0;
  for (int i = 0; i < size; ++i) {
    running += dist[i];
    cdf[i] = running;
    if (dist[i] > 0.0) last_positive = i;
  }
  std::fill(cdf.begin() + last_positive, cdf.end(), 1.0);

  SampleSet out{.n = dist.n(), .values = {}, .seed_lineage = rng.lineage()};
  out.values.resize(count);
  for (int& v : out.values) {
    const double u = rng.Uniform();
    v = static_cast<int>(std::upper_bound(cdf.begin(), cdf.end(), u) -
                         cdf.begin());
  }
  return out;
}

SampleSet Obfuscate(const Channel& channel, const SampleSet& samples,
                    RandomStream& rng) {
  if (samples.n != channel.n()) {
    throw DimensionMismatchError("Obfuscate: channel and samples differ in n");
  }
  SampleSet out{.n = samples.n, .values = {}, .seed_lineage = rng.lineage()};
  out.values.reserve(samples.values.size());
  for (int v : samples.values) out.values.push_back(channel.Apply(v, rng));
  return out;
}

Distribution Empirical(const SampleSet& samples) {
  if (samples.values.empty()) {
    throw InvalidArgumentError("Empirical: empty sample set");
  }
  std::vector<long long> counts(samples.n + 1, 0);
  for (int v : samples.values) {
    if (v < 0 || v > samples.n) {
      throw InvalidArgumentError("Empirical: value outside [0, n]");
    }
    ++counts[v];
  }
  const double total = static_cast<double>(samples.values.size());
  std::vector<double> w(counts.size());
  for (size_t j = 0; j < w.size(); ++j) w[j] = counts[j] / total;
  return Distribution(std::move(w));
}

}  // namespace geoldp
