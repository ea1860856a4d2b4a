# Copyright 2026 The geoldp Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Geometric and k-ary randomized response channels, IBU and metrics."""

from geoldp._geoldp import (
    DimensionMismatchError,
    InvalidArgumentError,
    SingularMatrixError,
    ZeroDenominatorError,
    binomial_prior,
    calibrate_epsilon_for_radius,
    default_config_json,
    estimate_by_inversion,
    ibu,
    invert_channel,
    kantorovich,
    kantorovich_transport,
    krr,
    log_likelihood,
    run_and_write,
    run_suite,
    sample_and_obfuscate,
    tightest_dprivacy_epsilon,
    tightest_ldp_epsilon,
    total_variation,
    truncated_geometric,
)

__all__ = [name for name in dir() if not name.startswith("_")]
