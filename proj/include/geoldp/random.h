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

#ifndef GEOLDP_RANDOM_H_
#define GEOLDP_RANDOM_H_

#include <cstdint>
#include <random>

namespace geoldp {

// What a stream is used for. Part of the seed derivation so that the
// samples, the noise and the prior of one cell never share a stream.
enum class StreamPurpose : uint64_t {
  kGeneric = 0,
  kPrior = 1,
  kSamples = 2,
  kNoise = 3,
};

// Where a stream came from.
struct SeedLineage {
  uint64_t master_seed = 0;
  uint64_t cell_index = 0;
  uint64_t replicate_index = 0;
  StreamPurpose purpose = StreamPurpose::kGeneric;
};

// Deterministic random stream. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; the conversions to doubles and bounded
// integers are done here rather than through <random> distributions, whose
// algorithms are implementation-defined, so that a given lineage produces
// the same values on every platform.
class RandomStream {
 public:
  explicit RandomStream(uint64_t seed);

  // Stream keyed by (master_seed, cell_index, replicate_index, purpose).
  // Distinct keys give statistically independent streams.
  static RandomStream Derive(uint64_t master_seed, uint64_t cell_index,
                             uint64_t replicate_index, StreamPurpose purpose);

  uint64_t NextU64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double Uniform();

  // Uniform on {0, ..., bound - 1}; bound must be positive.
  uint64_t UniformInt(uint64_t bound);

  // Standard exponential, -log(1 - U).
  double StandardExponential();

  const SeedLineage& lineage() const { return lineage_; }

 private:
  std::mt19937_64 engine_;
  SeedLineage lineage_;
};

// One step of the SplitMix64 finalizer; exposed for seed derivation tests.
uint64_t SplitMix64(uint64_t x);

}  // namespace geoldp

#endif  // GEOLDP_RANDOM_H_
