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

#include "geoldp/estimator.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/LU>

#include "geoldp/errors.h"

namespace geoldp {
namespace {

constexpr double kNegativeSlack = 1e-10;
constexpr double kSumSlack = 1e-8;

void CheckDimensions(const Channel& channel, const Distribution& a,
                     const Distribution& b, const char* where) {
  if (a.size() != channel.size() || b.size() != channel.size()) {
    throw DimensionMismatchError(std::string(where) +
                                 ": channel and distributions differ in size");
  }
}

// predicted_j = sum_i p_i C(i, j), accumulated over i in increasing order.
void Predict(const Channel& channel, std::span<const double> p,
             std::vector<double>& predicted) {
  const int size = channel.size();
  std::fill(predicted.begin(), predicted.end(), 0.0);
  for (int i = 0; i < size; ++i) {
    const double pi = p[i];
    if (pi == 0.0) continue;
    const auto row = channel.Row(i);
    for (int j = 0; j < size; ++j) predicted[j] += pi * row[j];
  }
}

double LogLikelihoodFromPrediction(std::span<const double> q,
                                   std::span<const double> predicted) {
  double ll = 0.0;
  for (size_t y = 0; y < q.size(); ++y) {
    if (q[y] == 0.0) continue;
    if (!(predicted[y] > 0.0)) return -std::numeric_limits<double>::infinity();
    ll += q[y] * std::log(predicted[y]);
  }
  return ll;
}

// Writes the update of p into `next`, given predicted = pC. Entries of p may
// be zero here; only the starting point of a run needs full support.
void UpdateInPlace(const Channel& channel, std::span<const double> q,
                   std::span<const double> p,
                   const std::vector<double>& predicted,
                   std::vector<double>& ratio, std::vector<double>& next) {
  const int size = channel.size();
  for (int j = 0; j < size; ++j) {
    if (q[j] == 0.0) {
      ratio[j] = 0.0;
    } else if (predicted[j] > 0.0) {
      ratio[j] = q[j] / predicted[j];
    } else {
      throw ZeroDenominatorError("IBU: reported value " + std::to_string(j) +
                                 " has empirical mass but zero predicted mass");
    }
  }
  for (int i = 0; i < size; ++i) {
    const auto row = channel.Row(i);
    double acc = 0.0;
    for (int j = 0; j < size; ++j) acc += row[j] * ratio[j];
    next[i] = p[i] * acc;
  }
}

}  // namespace

double LogLikelihood(const Distribution& theta, const Channel& channel,
                     const Distribution& q) {
  CheckDimensions(channel, theta, q, "LogLikelihood");
  std::vector<double> predicted(channel.size());
  Predict(channel, theta.weights(), predicted);
  return LogLikelihoodFromPrediction(q.weights(), predicted);
}

Distribution IbuStep(const Channel& channel, const Distribution& q,
                     const Distribution& p) {
  CheckDimensions(channel, q, p, "IbuStep");
  if (!p.HasFullSupport()) {
    throw InvalidArgumentError("IbuStep: p must have full support");
  }
  const int size = channel.size();
  std::vector<double> predicted(size), ratio(size), next(size);
  Predict(channel, p.weights(), predicted);
  UpdateInPlace(channel, q.weights(), p.weights(), predicted, ratio, next);
  return Distribution(std::move(next));
}

IbuResult IbuRun(const Channel& channel, const Distribution& q,
                 const Distribution& init, const IbuOptions& options) {
  CheckDimensions(channel, q, init, "IbuRun");
  if (!init.HasFullSupport()) {
    throw InvalidArgumentError("IbuRun: initial guess must have full support");
  }
  if (options.max_iterations < 1) {
    throw InvalidArgumentError("IbuRun: max_iterations must be >= 1");
  }
  if (!(options.tolerance >= 0.0)) {
    throw InvalidArgumentError("IbuRun: tolerance must be >= 0");
  }
  const int size = channel.size();
  std::vector<double> current = init.vector();
  std::vector<double> next(size), predicted(size), ratio(size);

  IbuResult result{.estimate = init, .likelihood_trace = {}};
  result.likelihood_trace.reserve(options.max_iterations);
  Predict(channel, current, predicted);
  double previous = LogLikelihoodFromPrediction(q.weights(), predicted);
  result.initial_log_likelihood = previous;

  for (int k = 0; k < options.max_iterations; ++k) {
    UpdateInPlace(channel, q.weights(), current, predicted, ratio, next);
    current.swap(next);
    Predict(channel, current, predicted);
    const double ll = LogLikelihoodFromPrediction(q.weights(), predicted);
    result.likelihood_trace.push_back(ll);
    result.iterations_run = k + 1;
    if (options.tolerance > 0.0 && ll - previous < options.tolerance) {
      result.stop_reason = IbuStopReason::kTolerance;
      break;
    }
    previous = ll;
  }
  result.estimate = Distribution(std::move(current));
  return result;
}

IbuResult IbuRun(const Channel& channel, const Distribution& q,
                 const IbuOptions& options) {
  return IbuRun(channel, q, Distribution::Uniform(channel.n()), options);
}

Matrix InvertChannel(const Channel& channel) {
  Eigen::FullPivLU<Matrix> lu(channel.matrix());
  if (!lu.isInvertible()) {
    throw SingularMatrixError("InvertChannel: matrix is singular (rank " +
                              std::to_string(lu.rank()) + " of " +
                              std::to_string(channel.size()) + ")");
  }
  return lu.inverse();
}

InversionEstimate EstimateByInversion(const Channel& channel,
                                      const Distribution& q) {
  if (q.size() != channel.size()) {
    throw DimensionMismatchError("EstimateByInversion: size mismatch");
  }
  // r = q C^-1  <=>  C^T r^T = q^T.
  Eigen::FullPivLU<Matrix> lu(channel.matrix().transpose());
  if (!lu.isInvertible()) {
    throw SingularMatrixError("EstimateByInversion: channel is singular");
  }
  const Eigen::VectorXd rhs =
      Eigen::Map<const Eigen::VectorXd>(q.vector().data(), q.size());
  const Eigen::VectorXd r = lu.solve(rhs);

  InversionEstimate out;
  out.raw.assign(r.data(), r.data() + r.size());
  double sum = 0.0;
  bool admissible = true;
  for (double v : out.raw) {
    sum += v;
    if (!(v >= -kNegativeSlack)) admissible = false;
  }
  if (!admissible || std::abs(sum - 1.0) > kSumSlack) return out;

  std::vector<double> clamped(out.raw.size());
  double total = 0.0;
  for (size_t i = 0; i < clamped.size(); ++i) {
    clamped[i] = std::max(out.raw[i], 0.0);
    total += clamped[i];
  }
  for (double& v : clamped) v /= total;
  out.distribution = Distribution(std::move(clamped));
  return out;
}

}  // namespace geoldp
