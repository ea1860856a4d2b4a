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

#ifndef GEOLDP_BENCH_H_
#define GEOLDP_BENCH_H_

#include <compare>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "geoldp/channel.h"
#include "geoldp/distribution.h"
#include "geoldp/sampling.h"

namespace geoldp::bench {

// A mechanism of the experiment grid.
struct MechanismSpec {
  // kIdentity is the no-noise limit, used to isolate sampling error.
  enum class Kind { kGeometric, kKrr, kIdentity };

  Kind kind = Kind::kGeometric;
  double epsilon = 0.0;
  // Label used in output files; defaults to the kind name.
  std::string name;

  static MechanismSpec Geometric(double epsilon);
  static MechanismSpec Krr(double epsilon);
  static MechanismSpec Identity();

  std::string Label() const;

  // Channel on [0, n]. kRR uses k = n + 1 so that both mechanisms share the
  // value range.
  Channel Build(int n) const;
};

std::string KindName(MechanismSpec::Kind kind);

struct ExperimentConfig {
  int n = 100;
  std::vector<MechanismSpec> mechanisms;
  std::vector<PriorSpec> priors;
  std::vector<int> sample_sizes;
  int repetitions = 20;
  int ibu_iterations = 5000;
  uint64_t master_seed = 12345;
  // Draw a new k-point prior for every replicate instead of one per suite.
  bool redraw_prior = false;
  // Persist the likelihood trace of every replicate, not just replicate 0.
  bool full_traces = false;
  // Write measured wall times into records.csv. Off by default because
  // timings are not reproducible.
  bool record_timings = false;
  int workers = 1;

  // Geometric at ln2/10 and kRR at ln2 over [0, 100]; binomial(0.5) and
  // 4-point priors; 1k/10k/50k/100k samples; 20 replicates; 5000 IBU steps.
  static ExperimentConfig Default();

  // Throws InvalidArgumentError.
  void Validate() const;

  int CellCount() const;
};

// Loads a JSON config; keys that are absent keep their default values.
ExperimentConfig LoadConfig(const std::filesystem::path& path);
ExperimentConfig ConfigFromJson(const std::string& text);
std::string ConfigToJson(const ExperimentConfig& config);

// Position of a cell in the grid; ordering is the canonical output order.
struct CellId {
  int mechanism = 0;
  int prior = 0;
  int size = 0;
  int replicate = 0;

  auto operator<=>(const CellId&) const = default;
};

struct ExperimentRecord {
  CellId cell;
  std::string mechanism;
  std::string prior;
  int sample_size = 0;
  int replicate = 0;
  double kantorovich_estimate = 0.0;
  double kantorovich_noisy = 0.0;
  double initial_log_likelihood = 0.0;
  double final_log_likelihood = 0.0;
  std::vector<double> likelihood_trace;  // empty unless retained
  double wall_time_s = 0.0;
  std::vector<double> true_prior;
  std::vector<double> noisy_empirical;
  std::vector<double> estimate;
  bool failed = false;
  std::string failure_reason;
};

// "<mechanism>_<prior>_<size>_r<replicate>".
std::string CellName(const ExperimentRecord& record);

// Prior used by a cell: the binomial is deterministic, a k-point prior comes
// from its own stream (one per suite, or one per replicate with
// redraw_prior).
Distribution SuitePrior(const ExperimentConfig& config, int prior_index,
                        int replicate);

// Runs one cell: sample the prior, obfuscate, form the empirical
// distribution, run IBU from uniform for ibu_iterations, measure. Every
// stream is derived from master_seed and the cell coordinates. The sample
// stream ignores the mechanism, so all mechanisms see the same true sample.
// Errors are caught and reported through `failed`.
ExperimentRecord RunCell(const ExperimentConfig& config, const CellId& cell,
                         bool keep_trace = true);

enum class TraceRetention { kConfigured, kAll };

// Runs the whole grid on config.workers threads and returns the records in
// canonical cell order, independent of scheduling.
std::vector<ExperimentRecord> RunSuite(
    const ExperimentConfig& config,
    TraceRetention retention = TraceRetention::kConfigured);

struct ProfileRow {
  int output_value = 0;
  double probability = 0.0;
};

// Row x of the mechanism's channel.
std::vector<ProfileRow> MechanismProfile(const ExperimentConfig& config,
                                         const MechanismSpec& mechanism,
                                         int x);

struct SummaryRow {
  std::string mechanism;
  std::string prior;
  int sample_size = 0;
  int count = 0;
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation; 0 for a single replicate
  double min = 0.0;
  double max = 0.0;
};

struct RatioRow {
  std::string prior;
  int sample_size = 0;
  double krr_over_geometric = 0.0;
};

// Statistics of kantorovich_estimate per (mechanism, prior, sample size), in
// order of first appearance. Failed records are skipped.
std::vector<SummaryRow> Summarize(const std::vector<ExperimentRecord>& records);

// mean_krr / mean_geometric per (prior, sample size), for mechanisms
// labelled "krr" and "geometric".
std::vector<RatioRow> MeanRatios(const std::vector<SummaryRow>& summary);

// Output files. Numbers are printed with 17 significant digits, LF endings.
std::string FormatNumber(double value);
std::string RecordsCsv(const std::vector<ExperimentRecord>& records,
                       bool with_timings);
std::string FailuresCsv(const std::vector<ExperimentRecord>& records);
std::string SummaryCsv(const std::vector<SummaryRow>& summary);
std::string RatiosCsv(const std::vector<RatioRow>& ratios);
std::string TraceCsv(const ExperimentRecord& record);
std::string ProfileCsv(const std::vector<ProfileRow>& rows);
std::string MetaJson(const ExperimentConfig& config, int record_count,
                     int failure_count);

// Parses records.csv back into records (distances, likelihood and identity
// columns only).
std::vector<ExperimentRecord> ParseRecordsCsv(const std::string& text);

void WriteFile(const std::filesystem::path& path, const std::string& content);
std::string ReadFile(const std::filesystem::path& path);

// Runs the suite and writes records.csv, summary.csv, ratios.csv,
// failures.csv, trace_<cell>.csv and meta.json under `out_dir`.
std::vector<ExperimentRecord> RunAndWrite(const ExperimentConfig& config,
                                          const std::filesystem::path& out_dir);

}  // namespace geoldp::bench

#endif  // GEOLDP_BENCH_H_
