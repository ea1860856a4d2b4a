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

#ifndef GEOLDP_ESTIMATOR_H_
#define GEOLDP_ESTIMATOR_H_

#include <optional>
#include <vector>

#include "geoldp/channel.h"
#include "geoldp/distribution.h"

namespace geoldp {

// Log-likelihood of observing the empirical report distribution `q` when the
// true values follow `theta` and are reported through `channel`:
//   sum_y q_y log(sum_i theta_i C(i, y)),
// skipping q_y = 0. Returns -infinity if some q_y > 0 has zero predicted mass.
double LogLikelihood(const Distribution& theta, const Channel& channel,
                     const Distribution& q);

// One Iterative Bayesian Update step:
//   p'_i = sum_j q_j p_i C(i, j) / sum_h p_h C(h, j).
// Requires p to have full support. Throws DimensionMismatchError and
// ZeroDenominatorError.
Distribution IbuStep(const Channel& channel, const Distribution& q,
                     const Distribution& p);

enum class IbuStopReason { kTolerance, kMaxIterations };

struct IbuOptions {
  int max_iterations = 5000;
  // Stop once one step improves the log-likelihood by less than this. Zero
  // disables the test and runs exactly max_iterations steps.
  double tolerance = 1e-10;
};

struct IbuResult {
  Distribution estimate;
  int iterations_run = 0;
  // Log-likelihood of the initial guess.
  double initial_log_likelihood = 0.0;
  // likelihood_trace[k] is the log-likelihood after step k + 1.
  std::vector<double> likelihood_trace;
  IbuStopReason stop_reason = IbuStopReason::kMaxIterations;
};

// Iterates IbuStep from `init` (which must have full support). The
// iteration is an EM scheme; its limit is the maximum-likelihood estimate of
// the true distribution given q.
IbuResult IbuRun(const Channel& channel, const Distribution& q,
                 const Distribution& init, const IbuOptions& options = {});

// Same, starting from the uniform distribution.
IbuResult IbuRun(const Channel& channel, const Distribution& q,
                 const IbuOptions& options = {});

// Inverse of the channel matrix via a fully pivoted LU factorization.
// Throws SingularMatrixError when the matrix is (numerically) rank deficient.
Matrix InvertChannel(const Channel& channel);

// Outcome of the inversion estimator. `distribution` is set only when the
// inverse image q C^-1 is a probability vector (entries >= -1e-10, sum
// within 1e-8 of 1); `raw` always holds q C^-1.
struct InversionEstimate {
  std::optional<Distribution> distribution;
  std::vector<double> raw;

  bool is_distribution() const { return distribution.has_value(); }
};

InversionEstimate EstimateByInversion(const Channel& channel,
                                      const Distribution& q);

}  // namespace geoldp

#endif  // GEOLDP_ESTIMATOR_H_
