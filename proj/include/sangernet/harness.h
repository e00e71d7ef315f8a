// Copyright 2026 The sangernet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SANGERNET_HARNESS_H_
#define SANGERNET_HARNESS_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sangernet/distributed.h"
#include "sangernet/metrics.h"
#include "sangernet/topology.h"

namespace sangernet {

// One experiment, read from a flat "key = value" file ('#' starts a comment).
struct ExperimentConfig {
  std::string algorithm = "dsa";  // dsa gha_central gha_local_only oi dpgd
                                  // seqdistpm modified_gha
  std::string topology = "erdos_renyi";  // erdos_renyi cycle star complete
  double p = 0.5;
  int M = 10;
  int d = 10;
  int K = 3;
  std::int64_t N = 10000;
  std::vector<std::int64_t> node_samples;  // overrides the equal split
  double eigengap = 0.8;
  std::vector<double> spectrum;  // explicit eigenvalues, overrides eigengap
  std::string input;             // data file (.csv or binary); overrides d, N
  double alpha = 0.1;
  std::int64_t T = 5000;
  double comm_budget = 0.0;
  int Tc = 50;
  std::int64_t outer_iters = 100;
  int trials = 10;
  std::uint64_t seed = 1;
  std::string out = "out";
  std::int64_t stride = 10;  // snapshot stride for probes
  bool fixed_graph = false;
  std::string partition = "equal";  // equal shuffled
  int jobs = 1;
  bool probes = false;

  std::string source = "<config>";
  std::map<std::string, int> lines;  // key -> line it was set on
};

ExperimentConfig parse_config(std::string_view text,
                              const std::string& source = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

struct ValidationReport {
  std::vector<std::string> warnings;
  double lambda1 = 0.0;
  double min_self_weight = 1.0;
  double step_bound = 0.0;
};

// Structural problems throw kConfigError naming the offending line. The
// step-size condition is only a warning.
ValidationReport validate_config(const ExperimentConfig& config);

// Everything one trial needs, rebuilt deterministically from its seed.
struct TrialSetup {
  std::uint64_t seed;
  Graph graph;
  Problem problem;
};

TrialSetup build_trial(const ExperimentConfig& config, int trial);

struct TrialOutcome {
  int trial = 0;
  RunResult run;
  std::optional<ProbeReport> probes;
};

struct AggregateRow {
  double comm_units = 0.0;
  double mean_error = 0.0;
  double std_error = 0.0;
  int n_trials = 0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<TrialOutcome> trials;
  std::vector<AggregateRow> aggregate;
  EigenBasis truth;  // reference of trial 0
  bool non_finite = false;
};

// Runs all trials (in parallel up to config.jobs) and aggregates them.
ExperimentResult run_trials(const ExperimentConfig& config);

// Union comm-unit grid with last-value-carried-forward per trial; sample
// standard deviation (0 for a single trial).
std::vector<AggregateRow> aggregate(std::span<const Trajectory> trajectories);

std::string trajectory_csv(int trial, const Trajectory& trajectory);
std::string aggregate_csv(std::span<const AggregateRow> rows);

// Writes via a temporary file and rename. Throws kIoError.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content);

// trial_<n>.csv, aggregate.csv, and probes_<n>.csv when probes are enabled.
void write_outputs(const ExperimentResult& result,
                   const std::filesystem::path& dir);

ExperimentResult run_experiment(const ExperimentConfig& config);

struct MergedTable {
  std::vector<std::string> columns;  // one per config
  std::vector<double> comm_units;
  std::vector<std::vector<double>> values;  // values[column][row]
  std::string csv() const;
};

// Mean-error curves of several experiments on one comm-unit grid. Throws
// kConfigError for an empty list or when the experiments do not share d, K
// and the reference eigenvectors.
MergedTable merge_results(std::span<const ExperimentResult> results);
MergedTable compare(std::span<const ExperimentConfig> configs);

}  // namespace sangernet

#endif  // SANGERNET_HARNESS_H_
