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

#ifndef GEOLDP_METRICS_H_
#define GEOLDP_METRICS_H_

#include "geoldp/channel.h"
#include "geoldp/distribution.h"

namespace geoldp {

// Largest domain bound accepted by KantorovichTransport.
inline constexpr int kMaxTransportDomain = 20;

// Kantorovich (Wasserstein-1) distance on [0, n] with ground distance
// |i - j|, via the closed form sum_{k<n} |F_mu(k) - F_nu(k)| over the
// cumulative distribution functions. O(n).
double Kantorovich1d(const Distribution& mu, const Distribution& nu);

// Kantorovich distance for an arbitrary ground metric, computed as the
// optimal value of the transportation problem
//   min sum_ij gamma_ij d(i, j)  s.t.  gamma 1 = mu, gamma^T 1 = nu, gamma >= 0
// with successive shortest augmenting paths. Exact, but meant as a test
// oracle: n must not exceed kMaxTransportDomain.
double KantorovichTransport(const Distribution& mu, const Distribution& nu,
                            const GroundMetric& metric = {});

// (1/2) sum_i |mu_i - nu_i|.
double TotalVariation(const Distribution& mu, const Distribution& nu);

struct DistanceReport {
  double kantorovich = 0.0;
  double total_variation = 0.0;
};

DistanceReport CompareDistributions(const Distribution& mu,
                                    const Distribution& nu);

}  // namespace geoldp

#endif  // GEOLDP_METRICS_H_
