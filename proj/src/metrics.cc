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

#include "geoldp/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "geoldp/errors.h"

namespace geoldp {
namespace {

void CheckSameDomain(const Distribution& mu, const Distribution& nu,
                     const char* where) {
  if (mu.size() != nu.size()) {
    throw DimensionMismatchError(std::string(where) +
                                 ": distributions live on different domains");
  }
}

// Mass below this is treated as exhausted by the transport solver.
constexpr double kMassEpsilon = 1e-15;

}  // namespace

double Kantorovich1d(const Distribution& mu, const Distribution& nu) {
  CheckSameDomain(mu, nu, "Kantorovich1d");
  double cdf_gap = 0.0;
  double distance = 0.0;
  for (int k = 0; k < mu.n(); ++k) {
    cdf_gap += mu[k] - nu[k];
    distance += std::abs(cdf_gap);
  }
  return distance;
}

double KantorovichTransport(const Distribution& mu, const Distribution& nu,
                            const GroundMetric& metric) {
  CheckSameDomain(mu, nu, "KantorovichTransport");
  const int size = mu.size();
  if (mu.n() > kMaxTransportDomain) {
    throw InvalidArgumentError("KantorovichTransport: domain too large");
  }
  std::vector<double> supply = mu.vector();
  std::vector<double> demand = nu.vector();
  std::vector<double> cost(static_cast<size_t>(size) * size);
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) cost[i * size + j] = metric(i, j);
  }
  std::vector<double> flow(static_cast<size_t>(size) * size, 0.0);

  // Residual graph over 2*size nodes: sources 0..size-1, sinks
  // size..2*size-1. Forward arcs i -> j are uncapacitated; backward arcs
  // j -> i exist while flow(i, j) > 0.
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(2 * size);
  std::vector<int> pred(2 * size);

  double total_cost = 0.0;
  while (true) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(pred.begin(), pred.end(), -1);
    bool any_supply = false;
    for (int i = 0; i < size; ++i) {
      if (supply[i] > kMassEpsilon) {
        dist[i] = 0.0;
        any_supply = true;
      }
    }
    if (!any_supply) break;

    // Bellman-Ford; residual costs may be negative on backward arcs.
    for (int round = 0; round < 2 * size; ++round) {
      bool changed = false;
      for (int i = 0; i < size; ++i) {
        if (dist[i] == kInf) continue;
        for (int j = 0; j < size; ++j) {
          const double cand = dist[i] + cost[i * size + j];
          if (cand < dist[size + j] - 1e-15) {
            dist[size + j] = cand;
            pred[size + j] = i;
            changed = true;
          }
        }
      }
      for (int j = 0; j < size; ++j) {
        if (dist[size + j] == kInf) continue;
        for (int i = 0; i < size; ++i) {
          if (flow[i * size + j] <= kMassEpsilon) continue;
          const double cand = dist[size + j] - cost[i * size + j];
          if (cand < dist[i] - 1e-15) {
            dist[i] = cand;
            pred[i] = size + j;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }

    int best_sink = -1;
    for (int j = 0; j < size; ++j) {
      if (demand[j] <= kMassEpsilon || dist[size + j] == kInf) continue;
      if (best_sink < 0 || dist[size + j] < dist[size + best_sink]) {
        best_sink = j;
      }
    }
    if (best_sink < 0) break;

    // Walk back to the originating source to find the bottleneck.
    double amount = demand[best_sink];
    int node = size + best_sink;
    while (pred[node] >= 0) {
      const int prev = pred[node];
      if (prev >= size) {  // backward arc (prev sink) -> node source
        amount = std::min(amount, flow[node * size + (prev - size)]);
      }
      node = prev;
    }
    amount = std::min(amount, supply[node]);

    supply[node] -= amount;
    demand[best_sink] -= amount;
    node = size + best_sink;
    while (pred[node] >= 0) {
      const int prev = pred[node];
      if (prev < size) {
        flow[prev * size + (node - size)] += amount;
        total_cost += amount * cost[prev * size + (node - size)];
      } else {
        flow[node * size + (prev - size)] -= amount;
        total_cost -= amount * cost[node * size + (prev - size)];
      }
      node = prev;
    }
  }
  return std::max(total_cost, 0.0);
}

double TotalVariation(const Distribution& mu, const Distribution& nu) {
  CheckSameDomain(mu, nu, "TotalVariation");
  return 0.5 * L1Distance(mu.weights(), nu.weights());
}

DistanceReport CompareDistributions(const Distribution& mu,
                                    const Distribution& nu) {
  return {Kantorovich1d(mu, nu), TotalVariation(mu, nu)};
}

}  // namespace geoldp
