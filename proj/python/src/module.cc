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

// Python bindings for the core operations.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "geoldp/bench.h"
#include "geoldp/channel.h"
#include "geoldp/errors.h"
#include "geoldp/estimator.h"
#include "geoldp/metrics.h"
#include "geoldp/random.h"
#include "geoldp/sampling.h"

namespace py = pybind11;

namespace geoldp {
namespace {

using RowMajor =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Channel ToChannel(const RowMajor& m) { return Channel(Matrix(m)); }

py::dict RecordToDict(const bench::ExperimentRecord& r) {
  py::dict d;
  d["cell"] = bench::CellName(r);
  d["mechanism"] = r.mechanism;
  d["prior"] = r.prior;
  d["sample_size"] = r.sample_size;
  d["replicate"] = r.replicate;
  d["kantorovich_estimate"] = r.kantorovich_estimate;
  d["kantorovich_noisy"] = r.kantorovich_noisy;
  d["initial_log_likelihood"] = r.initial_log_likelihood;
  d["final_log_likelihood"] = r.final_log_likelihood;
  d["likelihood_trace"] = r.likelihood_trace;
  d["true_prior"] = r.true_prior;
  d["noisy_empirical"] = r.noisy_empirical;
  d["estimate"] = r.estimate;
  d["failed"] = r.failed;
  d["failure_reason"] = r.failure_reason;
  return d;
}

}  // namespace
}  // namespace geoldp

PYBIND11_MODULE(_geoldp, m) {
  using namespace geoldp;
  m.doc() = "Geometric and k-ary randomized response channels, IBU, metrics.";

  py::register_exception<InvalidArgumentError>(m, "InvalidArgumentError",
                                                PyExc_ValueError);
  py::register_exception<DimensionMismatchError>(m, "DimensionMismatchError",
                                                 PyExc_ValueError);
  py::register_exception<SingularMatrixError>(m, "SingularMatrixError",
                                              PyExc_ArithmeticError);
  py::register_exception<ZeroDenominatorError>(m, "ZeroDenominatorError",
                                               PyExc_ArithmeticError);

  m.def(
      "truncated_geometric",
      [](int n, double epsilon) -> RowMajor {
        return BuildTruncatedGeometric(n, PrivacyLevel::FromEpsilon(epsilon))
            .matrix();
      },
      py::arg("n"), py::arg("epsilon"),
      "Truncated geometric channel on {0..n} as an (n+1)x(n+1) matrix.");
  m.def(
      "krr",
      [](int k, double epsilon) -> RowMajor {
        return BuildKrr(k, PrivacyLevel::FromEpsilon(epsilon)).matrix();
      },
      py::arg("k"), py::arg("epsilon"),
      "k-ary randomized response channel as a kxk matrix.");
  m.def(
      "tightest_ldp_epsilon",
      [](const RowMajor& c) { return TightestLdpEpsilon(ToChannel(c)); },
      py::arg("channel"));
  m.def(
      "tightest_dprivacy_epsilon",
      [](const RowMajor& c) { return TightestDPrivacyEpsilon(ToChannel(c)); },
      py::arg("channel"), "Tightest epsilon under the metric |x - y|.");
  m.def("calibrate_epsilon_for_radius", &CalibrateEpsilonForRadius,
        py::arg("target_epsilon"), py::arg("radius"));

  m.def(
      "log_likelihood",
      [](const std::vector<double>& theta, const RowMajor& c,
         const std::vector<double>& q) {
        return LogLikelihood(Distribution(theta), ToChannel(c),
                             Distribution(q));
      },
      py::arg("theta"), py::arg("channel"), py::arg("q"));
  m.def(
      "ibu",
      [](const RowMajor& c, const std::vector<double>& q, int max_iterations,
         double tolerance, std::optional<std::vector<double>> init) {
        const Channel ch = ToChannel(c);
        const IbuOptions opts{.max_iterations = max_iterations,
                              .tolerance = tolerance};
        const IbuResult r =
            init ? IbuRun(ch, Distribution(q), Distribution(*init), opts)
                 : IbuRun(ch, Distribution(q), opts);
        py::dict d;
        d["estimate"] = r.estimate.vector();
        d["iterations"] = r.iterations_run;
        d["initial_log_likelihood"] = r.initial_log_likelihood;
        d["likelihood_trace"] = r.likelihood_trace;
        d["converged"] = r.stop_reason == IbuStopReason::kTolerance;
        return d;
      },
      py::arg("channel"), py::arg("q"), py::arg("max_iterations") = 5000,
      py::arg("tolerance") = 1e-10, py::arg("init") = py::none(),
      "Iterative Bayesian update. Returns a dict with the estimate and the "
      "per-iteration log-likelihood.");
  m.def(
      "invert_channel",
      [](const RowMajor& c) -> RowMajor { return InvertChannel(ToChannel(c)); },
      py::arg("channel"));
  m.def(
      "estimate_by_inversion",
      [](const RowMajor& c, const std::vector<double>& q) {
        const InversionEstimate e =
            EstimateByInversion(ToChannel(c), Distribution(q));
        return py::make_tuple(
            e.raw, e.distribution ? py::cast(e.distribution->vector())
                                  : py::none());
      },
      py::arg("channel"), py::arg("q"),
      "Returns (raw solution, distribution or None).");

  m.def(
      "kantorovich",
      [](const std::vector<double>& mu, const std::vector<double>& nu) {
        return Kantorovich1d(Distribution(mu), Distribution(nu));
      },
      py::arg("mu"), py::arg("nu"));
  m.def(
      "kantorovich_transport",
      [](const std::vector<double>& mu, const std::vector<double>& nu) {
        return KantorovichTransport(Distribution(mu), Distribution(nu));
      },
      py::arg("mu"), py::arg("nu"));
  m.def(
      "total_variation",
      [](const std::vector<double>& mu, const std::vector<double>& nu) {
        return TotalVariation(Distribution(mu), Distribution(nu));
      },
      py::arg("mu"), py::arg("nu"));

  m.def(
      "binomial_prior",
      [](int n, double p) { return BinomialPrior(n, p).vector(); },
      py::arg("n"), py::arg("p") = 0.5);
  m.def(
      "sample_and_obfuscate",
      [](const std::vector<double>& prior, const RowMajor& c, int count,
         uint64_t seed) {
        RandomStream rng(seed);
        const SampleSet truth = DrawSamples(Distribution(prior), count, rng);
        const SampleSet noisy = Obfuscate(ToChannel(c), truth, rng);
        return py::make_tuple(truth.values, noisy.values);
      },
      py::arg("prior"), py::arg("channel"), py::arg("count"),
      py::arg("seed"), "Draws true samples and their obfuscated values.");

  m.def("default_config_json",
        [] { return bench::ConfigToJson(bench::ExperimentConfig::Default()); });
  m.def(
      "run_suite",
      [](const std::string& config_json) {
        const bench::ExperimentConfig cfg = bench::ConfigFromJson(config_json);
        std::vector<bench::ExperimentRecord> records;
        {
          py::gil_scoped_release release;
          records = bench::RunSuite(cfg);
        }
        py::list out;
        for (const auto& r : records) out.append(RecordToDict(r));
        return out;
      },
      py::arg("config_json"),
      "Runs the experiment grid described by a JSON config.");
  m.def(
      "run_and_write",
      [](const std::string& config_json, const std::string& out_dir) {
        const bench::ExperimentConfig cfg = bench::ConfigFromJson(config_json);
        py::gil_scoped_release release;
        return static_cast<int>(bench::RunAndWrite(cfg, out_dir).size());
      },
      py::arg("config_json"), py::arg("out_dir"),
      "Runs the grid and writes the CSV and meta.json outputs.");
}
