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

#include "geoldp/bench.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <thread>

#include "geoldp/errors.h"
#include "geoldp/estimator.h"
#include "geoldp/metrics.h"
#include "json.hpp"

namespace geoldp::bench {
namespace {

using nlohmann::json;

MechanismSpec::Kind KindFromName(const std::string& name) {
  if (name == "geometric") return MechanismSpec::Kind::kGeometric;
  if (name == "krr") return MechanismSpec::Kind::kKrr;
  if (name == "identity") return MechanismSpec::Kind::kIdentity;
  throw InvalidArgumentError("unknown mechanism kind '" + name + "'");
}

json MechanismToJson(const MechanismSpec& m) {
  json j = {{"kind", KindName(m.kind)}, {"name", m.Label()}};
  if (m.kind != MechanismSpec::Kind::kIdentity) j["epsilon"] = m.epsilon;
  return j;
}

json PriorToJson(const PriorSpec& p) {
  if (p.kind == PriorSpec::Kind::kBinomial) {
    return {{"kind", "binomial"}, {"p", p.success_probability}};
  }
  json j = {{"kind", "k_point"}, {"k", p.support_size}};
  if (p.fixed_support) j["support"] = *p.fixed_support;
  return j;
}

json ConfigJson(const ExperimentConfig& c) {
  json j;
  j["n"] = c.n;
  j["mechanisms"] = json::array();
  for (const auto& m : c.mechanisms) j["mechanisms"].push_back(MechanismToJson(m));
  j["priors"] = json::array();
  for (const auto& p : c.priors) j["priors"].push_back(PriorToJson(p));
  j["sample_sizes"] = c.sample_sizes;
  j["repetitions"] = c.repetitions;
  j["ibu_iterations"] = c.ibu_iterations;
  j["master_seed"] = c.master_seed;
  j["redraw_prior"] = c.redraw_prior;
  j["full_traces"] = c.full_traces;
  j["record_timings"] = c.record_timings;
  j["workers"] = c.workers;
  return j;
}

// Flat index of the (prior, size) pair; shared by every mechanism.
uint64_t SampleCellIndex(const ExperimentConfig& c, const CellId& cell) {
  return static_cast<uint64_t>(cell.prior) * c.sample_sizes.size() + cell.size;
}

uint64_t FullCellIndex(const ExperimentConfig& c, const CellId& cell) {
  return (static_cast<uint64_t>(cell.mechanism) * c.priors.size() +
          cell.prior) * c.sample_sizes.size() + cell.size;
}

std::vector<std::string> SplitLine(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

}  // namespace

MechanismSpec MechanismSpec::Geometric(double epsilon) {
  return {Kind::kGeometric, epsilon, ""};
}

MechanismSpec MechanismSpec::Krr(double epsilon) {
  return {Kind::kKrr, epsilon, ""};
}

MechanismSpec MechanismSpec::Identity() { return {Kind::kIdentity, 0.0, ""}; }

std::string KindName(MechanismSpec::Kind kind) {
  switch (kind) {
    case MechanismSpec::Kind::kGeometric:
      return "geometric";
    case MechanismSpec::Kind::kKrr:
      return "krr";
    case MechanismSpec::Kind::kIdentity:
      return "identity";
  }
  return "identity";
}

std::string MechanismSpec::Label() const {
  return name.empty() ? KindName(kind) : name;
}

Channel MechanismSpec::Build(int n) const {
  switch (kind) {
    case Kind::kGeometric:
      return BuildTruncatedGeometric(n, PrivacyLevel::FromEpsilon(epsilon));
    case Kind::kKrr:
      return BuildKrr(n + 1, PrivacyLevel::FromEpsilon(epsilon));
    case Kind::kIdentity:
      return Channel::Identity(n);
  }
  throw InvalidArgumentError("unknown mechanism");
}

ExperimentConfig ExperimentConfig::Default() {
  ExperimentConfig c;
  c.mechanisms = {MechanismSpec::Geometric(std::numbers::ln2 / 10),
                  MechanismSpec::Krr(std::numbers::ln2)};
  c.priors = {PriorSpec::Binomial(0.5), PriorSpec::KPoint(4)};
  c.sample_sizes = {1000, 10000, 50000, 100000};
  return c;
}

void ExperimentConfig::Validate() const {
  if (n < 1) throw InvalidArgumentError("config: n must be >= 1");
  if (mechanisms.empty() || priors.empty() || sample_sizes.empty()) {
    throw InvalidArgumentError(
        "config: mechanisms, priors and sample_sizes must be non-empty");
  }
  std::vector<std::string> labels;
  for (const auto& m : mechanisms) {
    if (m.kind != MechanismSpec::Kind::kIdentity &&
        !(std::isfinite(m.epsilon) && m.epsilon > 0.0)) {
      throw InvalidArgumentError("config: epsilon must be > 0");
    }
    labels.push_back(m.Label());
  }
  std::sort(labels.begin(), labels.end());
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) {
    throw InvalidArgumentError("config: mechanism labels must be unique");
  }
  for (const auto& p : priors) p.Validate(n);
  for (int s : sample_sizes) {
    if (s < 1) throw InvalidArgumentError("config: sample sizes must be >= 1");
  }
  if (repetitions < 1) throw InvalidArgumentError("config: repetitions < 1");
  if (ibu_iterations < 1) {
    throw InvalidArgumentError("config: ibu_iterations < 1");
  }
  if (workers < 1) throw InvalidArgumentError("config: workers < 1");
}

int ExperimentConfig::CellCount() const {
  return static_cast<int>(mechanisms.size() * priors.size() *
                          sample_sizes.size()) *
         repetitions;
}

ExperimentConfig ConfigFromJson(const std::string& text) {
  ExperimentConfig c = ExperimentConfig::Default();
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgumentError(std::string("config: ") + e.what());
  }
  try {
    if (j.contains("n")) c.n = j.at("n").get<int>();
    if (j.contains("mechanisms")) {
      c.mechanisms.clear();
      for (const auto& m : j.at("mechanisms")) {
        MechanismSpec spec;
        spec.kind = KindFromName(m.at("kind").get<std::string>());
        if (spec.kind != MechanismSpec::Kind::kIdentity) {
          spec.epsilon = m.at("epsilon").get<double>();
        }
        spec.name = m.value("name", "");
        c.mechanisms.push_back(spec);
      }
    }
    if (j.contains("priors")) {
      c.priors.clear();
      for (const auto& p : j.at("priors")) {
        const auto kind = p.at("kind").get<std::string>();
        if (kind == "binomial") {
          c.priors.push_back(PriorSpec::Binomial(p.value("p", 0.5)));
        } else if (kind == "k_point") {
          PriorSpec spec = PriorSpec::KPoint(p.value("k", 4));
          if (p.contains("support")) {
            spec.fixed_support = p.at("support").get<std::vector<int>>();
          }
          c.priors.push_back(spec);
        } else {
          throw InvalidArgumentError("config: unknown prior kind '" + kind +
                                     "'");
        }
      }
    }
    if (j.contains("sample_sizes")) {
      c.sample_sizes = j.at("sample_sizes").get<std::vector<int>>();
    }
    c.repetitions = j.value("repetitions", c.repetitions);
    c.ibu_iterations = j.value("ibu_iterations", c.ibu_iterations);
    c.master_seed = j.value("master_seed", c.master_seed);
    c.redraw_prior = j.value("redraw_prior", c.redraw_prior);
    c.full_traces = j.value("full_traces", c.full_traces);
    c.record_timings = j.value("record_timings", c.record_timings);
    c.workers = j.value("workers", c.workers);
  } catch (const json::exception& e) {
    throw InvalidArgumentError(std::string("config: ") + e.what());
  }
  c.Validate();
  return c;
}

ExperimentConfig LoadConfig(const std::filesystem::path& path) {
  return ConfigFromJson(ReadFile(path));
}

std::string ConfigToJson(const ExperimentConfig& config) {
  return ConfigJson(config).dump(2) + "\n";
}

std::string CellName(const ExperimentRecord& record) {
  return record.mechanism + "_" + record.prior + "_" +
         std::to_string(record.sample_size) + "_r" +
         std::to_string(record.replicate);
}

Distribution SuitePrior(const ExperimentConfig& config, int prior_index,
                        int replicate) {
  const PriorSpec& spec = config.priors.at(prior_index);
  RandomStream rng = RandomStream::Derive(
      config.master_seed, prior_index, config.redraw_prior ? replicate : 0,
      StreamPurpose::kPrior);
  return MakePrior(spec, config.n, rng);
}

ExperimentRecord RunCell(const ExperimentConfig& config, const CellId& cell,
                         bool keep_trace) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentRecord record;
  record.cell = cell;
  record.mechanism = config.mechanisms.at(cell.mechanism).Label();
  record.prior = config.priors.at(cell.prior).Name();
  record.sample_size = config.sample_sizes.at(cell.size);
  record.replicate = cell.replicate;
  try {
    const Distribution prior = SuitePrior(config, cell.prior, cell.replicate);
    const Channel channel = config.mechanisms[cell.mechanism].Build(config.n);

    RandomStream sample_rng =
        RandomStream::Derive(config.master_seed, SampleCellIndex(config, cell),
                             cell.replicate, StreamPurpose::kSamples);
    const SampleSet truth = DrawSamples(prior, record.sample_size, sample_rng);

    RandomStream noise_rng =
        RandomStream::Derive(config.master_seed, FullCellIndex(config, cell),
                             cell.replicate, StreamPurpose::kNoise);
    const Distribution noisy = Empirical(Obfuscate(channel, truth, noise_rng));

    IbuResult ibu = IbuRun(channel, noisy,
                           {.max_iterations = config.ibu_iterations,
                            .tolerance = 0.0});

    record.kantorovich_estimate = Kantorovich1d(prior, ibu.estimate);
    record.kantorovich_noisy = Kantorovich1d(prior, noisy);
    record.initial_log_likelihood = ibu.initial_log_likelihood;
    record.final_log_likelihood = ibu.likelihood_trace.back();
    if (keep_trace) record.likelihood_trace = std::move(ibu.likelihood_trace);
    record.true_prior = prior.vector();
    record.noisy_empirical = noisy.vector();
    record.estimate = ibu.estimate.vector();
    if (!std::isfinite(record.kantorovich_estimate) ||
        !std::isfinite(record.final_log_likelihood)) {
      throw Error("non-finite distance or likelihood");
    }
  } catch (const std::exception& e) {
    record.failed = true;
    record.failure_reason = e.what();
  }
  record.wall_time_s = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  return record;
}

std::vector<ExperimentRecord> RunSuite(const ExperimentConfig& config,
                                       TraceRetention retention) {
  config.Validate();
  std::vector<CellId> cells;
  cells.reserve(config.CellCount());
  for (int m = 0; m < static_cast<int>(config.mechanisms.size()); ++m) {
    for (int p = 0; p < static_cast<int>(config.priors.size()); ++p) {
      for (int s = 0; s < static_cast<int>(config.sample_sizes.size()); ++s) {
        for (int r = 0; r < config.repetitions; ++r) {
          cells.push_back({m, p, s, r});
        }
      }
    }
  }
  std::vector<ExperimentRecord> records(cells.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < cells.size(); i = next++) {
      const bool keep = retention == TraceRetention::kAll ||
                        config.full_traces || cells[i].replicate == 0;
      records[i] = RunCell(config, cells[i], keep);
    }
  };
  const int threads =
      std::min<int>(config.workers, static_cast<int>(cells.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return records;
}

std::vector<ProfileRow> MechanismProfile(const ExperimentConfig& config,
                                         const MechanismSpec& mechanism,
                                         int x) {
  if (x < 0 || x > config.n) {
    throw InvalidArgumentError("profile: x outside [0, n]");
  }
  const Channel channel = mechanism.Build(config.n);
  std::vector<ProfileRow> rows;
  rows.reserve(channel.size());
  for (int j = 0; j < channel.size(); ++j) rows.push_back({j, channel(x, j)});
  return rows;
}

std::vector<SummaryRow> Summarize(
    const std::vector<ExperimentRecord>& records) {
  using Key = std::tuple<std::string, std::string, int>;
  std::vector<Key> order;
  std::map<Key, std::vector<double>> groups;
  for (const auto& r : records) {
    if (r.failed) continue;
    Key key{r.mechanism, r.prior, r.sample_size};
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(r.kantorovich_estimate);
  }
  std::vector<SummaryRow> out;
  for (const auto& key : order) {
    const auto& v = groups[key];
    SummaryRow row{std::get<0>(key), std::get<1>(key), std::get<2>(key),
                   static_cast<int>(v.size())};
    double sum = 0.0;
    for (double d : v) sum += d;
    row.mean = sum / v.size();
    double ss = 0.0;
    for (double d : v) ss += (d - row.mean) * (d - row.mean);
    row.std = v.size() > 1 ? std::sqrt(ss / (v.size() - 1)) : 0.0;
    row.min = *std::min_element(v.begin(), v.end());
    row.max = *std::max_element(v.begin(), v.end());
    out.push_back(row);
  }
  return out;
}

std::vector<RatioRow> MeanRatios(const std::vector<SummaryRow>& summary) {
  std::vector<RatioRow> out;
  for (const auto& geo : summary) {
    if (geo.mechanism != "geometric") continue;
    for (const auto& krr : summary) {
      if (krr.mechanism == "krr" && krr.prior == geo.prior &&
          krr.sample_size == geo.sample_size) {
        out.push_back({geo.prior, geo.sample_size, krr.mean / geo.mean});
      }
    }
  }
  return out;
}

std::string FormatNumber(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string RecordsCsv(const std::vector<ExperimentRecord>& records,
                       bool with_timings) {
  std::string out =
      "mechanism,prior,sample_size,replicate,kantorovich_estimate,"
      "kantorovich_noisy,final_log_likelihood,wall_time_s\n";
  for (const auto& r : records) {
    if (r.failed) continue;
    out += r.mechanism + "," + r.prior + "," + std::to_string(r.sample_size) +
           "," + std::to_string(r.replicate) + "," +
           FormatNumber(r.kantorovich_estimate) + "," +
           FormatNumber(r.kantorovich_noisy) + "," +
           FormatNumber(r.final_log_likelihood) + "," +
           FormatNumber(with_timings ? r.wall_time_s : 0.0) + "\n";
  }
  return out;
}

std::string FailuresCsv(const std::vector<ExperimentRecord>& records) {
  std::string out = "mechanism,prior,sample_size,replicate,reason\n";
  for (const auto& r : records) {
    if (!r.failed) continue;
    std::string reason = r.failure_reason;
    std::replace(reason.begin(), reason.end(), ',', ';');
    std::replace(reason.begin(), reason.end(), '\n', ' ');
    out += r.mechanism + "," + r.prior + "," + std::to_string(r.sample_size) +
           "," + std::to_string(r.replicate) + "," + reason + "\n";
  }
  return out;
}

std::string SummaryCsv(const std::vector<SummaryRow>& summary) {
  std::string out = "mechanism,prior,sample_size,mean,std,min,max\n";
  for (const auto& s : summary) {
    out += s.mechanism + "," + s.prior + "," + std::to_string(s.sample_size) +
           "," + FormatNumber(s.mean) + "," + FormatNumber(s.std) + "," +
           FormatNumber(s.min) + "," + FormatNumber(s.max) + "\n";
  }
  return out;
}

std::string RatiosCsv(const std::vector<RatioRow>& ratios) {
  std::string out = "prior,sample_size,krr_over_geometric\n";
  for (const auto& r : ratios) {
    out += r.prior + "," + std::to_string(r.sample_size) + "," +
           FormatNumber(r.krr_over_geometric) + "\n";
  }
  return out;
}

std::string TraceCsv(const ExperimentRecord& record) {
  std::string out = "iteration,log_likelihood\n";
  out += "0," + FormatNumber(record.initial_log_likelihood) + "\n";
  for (size_t k = 0; k < record.likelihood_trace.size(); ++k) {
    out += std::to_string(k + 1) + "," +
           FormatNumber(record.likelihood_trace[k]) + "\n";
  }
  return out;
}

std::string ProfileCsv(const std::vector<ProfileRow>& rows) {
  std::string out = "output_value,probability\n";
  for (const auto& r : rows) {
    out += std::to_string(r.output_value) + "," + FormatNumber(r.probability) +
           "\n";
  }
  return out;
}

std::string MetaJson(const ExperimentConfig& config, int record_count,
                     int failure_count) {
  json j;
  j["schema_version"] = 1;
  j["config"] = ConfigJson(config);
  j["ibu_init"] = "uniform";
  j["ibu_stopping"] = "fixed_iterations";
  j["seed_lineage"] = {
      {"master_seed", config.master_seed},
      {"engine", "mt19937_64"},
      {"derivation",
       "seed = splitmix64(splitmix64(splitmix64(splitmix64(master_seed) ^ "
       "cell_index) ^ replicate_index) ^ purpose)"},
      {"streams",
       {{"prior",
         {{"purpose", static_cast<int>(StreamPurpose::kPrior)},
          {"cell_index", "prior_index"},
          {"replicate_index", config.redraw_prior ? "replicate" : "0"}}},
        {"samples",
         {{"purpose", static_cast<int>(StreamPurpose::kSamples)},
          {"cell_index", "prior_index * num_sizes + size_index"},
          {"replicate_index", "replicate"}}},
        {"noise",
         {{"purpose", static_cast<int>(StreamPurpose::kNoise)},
          {"cell_index",
           "(mechanism_index * num_priors + prior_index) * num_sizes + "
           "size_index"},
          {"replicate_index", "replicate"}}}}}};
  j["record_count"] = record_count;
  j["failure_count"] = failure_count;
  return j.dump(2) + "\n";
}

std::vector<ExperimentRecord> ParseRecordsCsv(const std::string& text) {
  std::stringstream in(text);
  std::string line;
  if (!std::getline(in, line) ||
      line.rfind("mechanism,prior,sample_size,replicate,", 0) != 0) {
    throw InvalidArgumentError("records.csv: missing or unexpected header");
  }
  std::vector<ExperimentRecord> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = SplitLine(line);
    if (f.size() != 8) {
      throw InvalidArgumentError("records.csv: line " +
                                 std::to_string(line_no) +
                                 " does not have 8 fields");
    }
    ExperimentRecord r;
    try {
      r.mechanism = f[0];
      r.prior = f[1];
      r.sample_size = std::stoi(f[2]);
      r.replicate = std::stoi(f[3]);
      r.kantorovich_estimate = std::stod(f[4]);
      r.kantorovich_noisy = std::stod(f[5]);
      r.final_log_likelihood = std::stod(f[6]);
      r.wall_time_s = std::stod(f[7]);
    } catch (const std::logic_error&) {
      throw InvalidArgumentError("records.csv: bad number on line " +
                                 std::to_string(line_no));
    }
    out.push_back(std::move(r));
  }
  return out;
}

void WriteFile(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw Error("failed writing " + path.string());
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<ExperimentRecord> RunAndWrite(
    const ExperimentConfig& config, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  auto records = RunSuite(config);
  const auto summary = Summarize(records);
  int failures = 0;
  for (const auto& r : records) {
    if (r.failed) {
      ++failures;
      continue;
    }
    if (!r.likelihood_trace.empty()) {
      WriteFile(out_dir / ("trace_" + CellName(r) + ".csv"), TraceCsv(r));
    }
  }
  WriteFile(out_dir / "records.csv", RecordsCsv(records, config.record_timings));
  WriteFile(out_dir / "summary.csv", SummaryCsv(summary));
  WriteFile(out_dir / "ratios.csv", RatiosCsv(MeanRatios(summary)));
  WriteFile(out_dir / "failures.csv", FailuresCsv(records));
  WriteFile(out_dir / "meta.json",
            MetaJson(config, static_cast<int>(records.size()) - failures,
                     failures));
  return records;
}

}  // namespace geoldp::bench
