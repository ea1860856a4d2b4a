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

#include "geoldp/random.h"

#include <cmath>
#include <limits>

#include "geoldp/errors.h"

namespace geoldp {

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RandomStream::RandomStream(uint64_t seed) : engine_(seed) {
  lineage_.master_seed = seed;
}

RandomStream RandomStream::Derive(uint64_t master_seed, uint64_t cell_index,
                                  uint64_t replicate_index,
                                  StreamPurpose purpose) {
  uint64_t h = SplitMix64(master_seed);
  h = SplitMix64(h ^ cell_index);
  h = SplitMix64(h ^ replicate_index);
  h = SplitMix64(h ^ static_cast<uint64_t>(purpose));
  RandomStream stream(h);
  stream.lineage_ = {master_seed, cell_index, replicate_index, purpose};
  return stream;
}

double RandomStream::Uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

uint64_t RandomStream::UniformInt(uint64_t bound) {
  if (bound == 0) throw InvalidArgumentError("UniformInt: bound must be > 0");
  // Rejection on the largest multiple of bound below 2^64.
  const uint64_t limit = std::numeric_limits<uint64_t>::max() -
                         std::numeric_limits<uint64_t>::max() % bound;
  uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

double RandomStream::StandardExponential() { return -std::log1p(-Uniform()); }

}  // namespace geoldp
