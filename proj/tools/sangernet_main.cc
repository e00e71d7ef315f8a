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

// sangernet: run, compare and validate distributed PCA experiments.
//
//   sangernet run <config> [--alpha F] [--seed N] [--trials N] [--jobs N] [--out DIR]
//   sangernet compare <cfg...> [--out FILE]
//   sangernet validate <config>
//
// Exit status: 0 ok, 2 config error, 3 numerical error, 4 I/O error.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sangernet/error.h"
#include "sangernet/harness.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

int exit_status(sangernet::ErrorCode code) {
  using sangernet::ErrorCode;
  switch (code) {
    case ErrorCode::kIoError:
      return kExitIo;
    case ErrorCode::kDegenerateSpectrum:
    case ErrorCode::kDegenerateIterate:
    case ErrorCode::kUndefinedAngle:
    case ErrorCode::kStateError:
    case ErrorCode::kInsufficientData:
      return kExitNumerical;
    default:
      return kExitConfig;
  }
}

void print_warnings(const sangernet::ValidationReport& report) {
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed Sanger's algorithm experiments"};
  app.require_subcommand(1);

  std::string run_config;
  std::optional<double> alpha;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<int> jobs;
  std::optional<std::string> out;
  auto* run = app.add_subcommand("run", "Run one experiment and write CSV outputs");
  run->add_option("config", run_config, "Experiment config file")->required();
  run->add_option("--alpha", alpha, "Step size");
  run->add_option("--seed", seed, "Base seed");
  run->add_option("--trials", trials, "Monte-Carlo trials");
  run->add_option("--jobs", jobs, "Parallel trials");
  run->add_option("--out", out, "Output directory");

  std::vector<std::string> compare_configs;
  std::optional<std::string> compare_out;
  auto* cmp = app.add_subcommand("compare", "Merge mean-error curves of several configs");
  cmp->add_option("configs", compare_configs, "Experiment config files");
  cmp->add_option("--out", compare_out, "Merged CSV path (default: stdout)");

  std::string validate_config_path;
  auto* val = app.add_subcommand("validate", "Check a config without running it");
  val->add_option("config", validate_config_path, "Experiment config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) {
      sangernet::ExperimentConfig config = sangernet::load_config(run_config);
      if (alpha) { config.alpha = *alpha; config.lines["alpha"] = 0; }
      if (seed) { config.seed = *seed; config.lines["seed"] = 0; }
      if (trials) { config.trials = *trials; config.lines["trials"] = 0; }
      if (jobs) { config.jobs = *jobs; config.lines["jobs"] = 0; }
      if (out) { config.out = *out; config.lines["out"] = 0; }
      print_warnings(sangernet::validate_config(config));
      const auto result = sangernet::run_experiment(config);
      std::cout << "wrote " << result.trials.size() << " trial(s) and aggregate.csv to "
                << config.out << '\n';
      if (result.non_finite) {
        std::cerr << "error: iterates became non-finite in at least one trial\n";
        return kExitNumerical;
      }
      return 0;
    }
    if (*cmp) {
      if (compare_configs.empty()) {
        std::cerr << "usage: sangernet compare <cfg...> [--out FILE]\n";
        return kExitConfig;
      }
      std::vector<sangernet::ExperimentConfig> configs;
      for (const auto& path : compare_configs) {
        configs.push_back(sangernet::load_config(path));
      }
      const auto table = sangernet::compare(configs);
      if (compare_out) {
        sangernet::write_file_atomic(*compare_out, table.csv());
      } else {
        std::cout << table.csv();
      }
      return 0;
    }
    const auto config = sangernet::load_config(validate_config_path);
    const auto report = sangernet::validate_config(config);
    print_warnings(report);
    std::cout << "ok: " << config.source << " (lambda_1 = " << report.lambda1
              << ", step-size bound = " << report.step_bound << ")\n";
    return 0;
  } catch (const sangernet::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_status(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}
