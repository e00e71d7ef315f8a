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

#include "sangernet/harness.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <system_error>
#include <thread>
#include <unordered_map>

#include "sangernet/datamodel.h"
#include "sangernet/error.h"
#include "sangernet/hebbian.h"

namespace sangernet {
namespace {

const std::set<std::string>& algorithms() {
  static const std::set<std::string> names = {
      "dsa", "gha_central", "gha_local_only", "oi", "dpgd", "seqdistpm", "modified_gha"};
  return names;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

[[noreturn]] void config_error(const ExperimentConfig& c, const std::string& key,
                               const std::string& message) {
  auto it = c.lines.find(key);
  std::string where = c.source;
  if (it != c.lines.end() && it->second > 0) {
    where += ":" + std::to_string(it->second);
  } else if (it != c.lines.end()) {
    where = "command line";
  }
  throw Error(ErrorCode::kConfigError, where + ": " + key + ": " + message);
}

template <typename T>
T parse_number(std::string_view text, const std::string& where) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last) {
    throw Error(ErrorCode::kConfigError,
                where + ": expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

template <typename T>
std::vector<T> parse_list(std::string_view text, const std::string& where) {
  std::vector<T> out;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    out.push_back(parse_number<T>(trim(item), where));
  }
  if (out.empty()) {
    throw Error(ErrorCode::kConfigError, where + ": empty list");
  }
  return out;
}

bool parse_bool(std::string_view text, const std::string& where) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw Error(ErrorCode::kConfigError,
              where + ": expected true or false, got '" + std::string(text) + "'");
}

using Setter = std::function<void(ExperimentConfig&, const std::string&,
                                  const std::string&)>;

const std::unordered_map<std::string, Setter>& setters() {
  static const std::unordered_map<std::string, Setter> table = {
      {"algorithm", [](auto& c, auto& v, auto&) { c.algorithm = v; }},
      {"topology",
       [](auto& c, auto& v, auto& w) {
         // erdos_renyi(0.3) is accepted as shorthand for topology + p.
         const auto open = v.find('(');
         if (open != std::string::npos && v.back() == ')') {
           c.topology = trim(std::string_view(v).substr(0, open));
           c.p = parse_number<double>(
               trim(std::string_view(v).substr(open + 1, v.size() - open - 2)), w);
         } else {
           c.topology = v;
         }
       }},
      {"p", [](auto& c, auto& v, auto& w) { c.p = parse_number<double>(v, w); }},
      {"M", [](auto& c, auto& v, auto& w) { c.M = parse_number<int>(v, w); }},
      {"d", [](auto& c, auto& v, auto& w) { c.d = parse_number<int>(v, w); }},
      {"K", [](auto& c, auto& v, auto& w) { c.K = parse_number<int>(v, w); }},
      {"N", [](auto& c, auto& v, auto& w) { c.N = parse_number<std::int64_t>(v, w); }},
      {"node_samples",
       [](auto& c, auto& v, auto& w) { c.node_samples = parse_list<std::int64_t>(v, w); }},
      {"eigengap",
       [](auto& c, auto& v, auto& w) { c.eigengap = parse_number<double>(v, w); }},
      {"spectrum",
       [](auto& c, auto& v, auto& w) { c.spectrum = parse_list<double>(v, w); }},
      {"input", [](auto& c, auto& v, auto&) { c.input = v; }},
      {"alpha", [](auto& c, auto& v, auto& w) { c.alpha = parse_number<double>(v, w); }},
      {"T", [](auto& c, auto& v, auto& w) { c.T = parse_number<std::int64_t>(v, w); }},
      {"comm_budget",
       [](auto& c, auto& v, auto& w) { c.comm_budget = parse_number<double>(v, w); }},
      {"Tc", [](auto& c, auto& v, auto& w) { c.Tc = parse_number<int>(v, w); }},
      {"outer_iters",
       [](auto& c, auto& v, auto& w) { c.outer_iters = parse_number<std::int64_t>(v, w); }},
      {"trials", [](auto& c, auto& v, auto& w) { c.trials = parse_number<int>(v, w); }},
      {"seed",
       [](auto& c, auto& v, auto& w) { c.seed = parse_number<std::uint64_t>(v, w); }},
      {"out", [](auto& c, auto& v, auto&) { c.out = v; }},
      {"stride",
       [](auto& c, auto& v, auto& w) { c.stride = parse_number<std::int64_t>(v, w); }},
      {"fixed_graph",
       [](auto& c, auto& v, auto& w) { c.fixed_graph = parse_bool(v, w); }},
      {"partition", [](auto& c, auto& v, auto&) { c.partition = v; }},
      {"jobs", [](auto& c, auto& v, auto& w) { c.jobs = parse_number<int>(v, w); }},
      {"probes", [](auto& c, auto& v, auto& w) { c.probes = parse_bool(v, w); }},
  };
  return table;
}

bool is_centralized(const std::string& algorithm) {
  return algorithm == "gha_central" || algorithm == "oi" ||
         algorithm == "modified_gha";
}

Graph make_graph(const ExperimentConfig& c, std::uint64_t seed) {
  if (c.topology == "erdos_renyi") return erdos_renyi(c.M, c.p, seed);
  if (c.topology == "cycle") return cycle(c.M);
  if (c.topology == "star") return star(c.M);
  return complete(c.M);
}

std::filesystem::path resolve_input(const ExperimentConfig& c) {
  std::filesystem::path path(c.input);
  if (path.is_relative() && c.source != "<config>") {
    const auto base = std::filesystem::path(c.source).parent_path();
    if (!base.empty()) path = base / path;
  }
  return path;
}

DataMatrix make_data(const ExperimentConfig& c, std::uint64_t seed) {
  if (!c.input.empty()) return center(read_matrix(resolve_input(c)));
  const SpectrumSpec spectrum =
      c.spectrum.empty() ? SpectrumSpec::geometric(c.d, c.eigengap)
                         : SpectrumSpec(c.spectrum, c.d);
  std::int64_t n = c.N;
  if (!c.node_samples.empty()) {
    n = 0;
    for (auto s : c.node_samples) n += s;
  }
  return center(generate_gaussian(c.d, n, spectrum, seed));
}

std::vector<DataMatrix> split(const ExperimentConfig& c, const DataMatrix& data,
                              std::uint64_t seed) {
  if (!c.node_samples.empty()) {
    std::vector<Eigen::Index> sizes(c.node_samples.begin(), c.node_samples.end());
    return partition(data, c.M, PartitionScheme::with_sizes(std::move(sizes)));
  }
  if (c.partition == "shuffled") {
    return partition(data, c.M, PartitionScheme::shuffled(seed));
  }
  return partition(data, c.M, PartitionScheme::equal());
}

RunOptions run_options(const ExperimentConfig& c) {
  RunOptions o;
  o.alpha = c.alpha;
  o.iterations = c.T;
  o.comm_budget = c.comm_budget;
  o.snapshot_stride = c.stride;
  o.keep_snapshots = c.probes;
  return o;
}

RunResult run_algorithm(const ExperimentConfig& c, const Problem& problem) {
  const RunOptions o = run_options(c);
  if (c.algorithm == "dsa") return dsa_run(problem, o);
  if (c.algorithm == "dpgd") return dpgd_run(problem, o);
  if (c.algorithm == "gha_central") return gha_central_run(problem, o);
  if (c.algorithm == "gha_local_only") return gha_local_only_run(problem, o);
  if (c.algorithm == "modified_gha") return modified_gha_central_run(problem, o);
  if (c.algorithm == "oi") return oi_run(problem, o);
  SeqDistPmOptions s;
  s.consensus_rounds = c.Tc;
  s.outer_iters = c.outer_iters;
  s.comm_budget = c.comm_budget;
  s.snapshot_stride = c.stride;
  s.keep_snapshots = c.probes;
  return seqdistpm_run(problem, s);
}

std::optional<ProbeReport> probe(const ExperimentConfig& c, const Problem& problem,
                                 const RunResult& run) {
  if (!c.probes || run.snapshots.size() < 2) return std::nullopt;
  ProbeContext ctx;
  const bool network = c.algorithm == "dsa";
  if (network) {
    for (const auto& l : problem.local) ctx.local_covariances.push_back(l.values());
    ctx.beta = problem.mixing.beta();
    ctx.min_self_weight = problem.mixing.min_self_weight();
  } else {
    ctx.local_covariances.push_back(problem.global.values());
  }
  ctx.global_covariance = problem.global.values();
  ctx.truth = full_eigenbasis(problem.global.values());
  ctx.alpha = c.alpha;
  ctx.lambda1 = problem.truth.values(0);
  ctx.modified = c.algorithm == "modified_gha";
  return bound_probes(run.snapshots, ctx);
}

bool same_basis(const EigenBasis& a, const EigenBasis& b) {
  if (a.vectors.rows() != b.vectors.rows() || a.size() != b.size()) return false;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    if (std::abs(a.vectors.col(k).dot(b.vectors.col(k))) < 1.0 - 1e-8) return false;
  }
  return true;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text, const std::string& source) {
  ExperimentConfig c;
  c.source = source;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string where = source + ":" + std::to_string(number);
    const auto hash = line.find('#');
    const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kConfigError, where + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw Error(ErrorCode::kConfigError, where + ": unknown key '" + key + "'");
    }
    if (c.lines.count(key)) {
      throw Error(ErrorCode::kConfigError, where + ": duplicate key '" + key +
                                               "' (first set on line " +
                                               std::to_string(c.lines[key]) + ")");
    }
    if (value.empty()) {
      throw Error(ErrorCode::kConfigError, where + ": key '" + key + "' has no value");
    }
    it->second(c, value, where + ": " + key);
    c.lines[key] = number;
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.string());
}

ValidationReport validate_config(const ExperimentConfig& c) {
  if (!algorithms().count(c.algorithm)) {
    config_error(c, "algorithm", "unknown algorithm '" + c.algorithm + "'");
  }
  if (c.topology != "erdos_renyi" && c.topology != "cycle" && c.topology != "star" &&
      c.topology != "complete") {
    config_error(c, "topology", "unknown topology '" + c.topology + "'");
  }
  if (c.M < 1) config_error(c, "M", "must be positive");
  if (c.topology == "erdos_renyi" && !(c.p > 0.0 && c.p <= 1.0)) {
    config_error(c, "p", "edge probability must lie in (0, 1]");
  }
  if (c.topology == "cycle" && c.M < 3) config_error(c, "M", "a cycle needs M >= 3");
  if (c.topology == "star" && c.M < 2) config_error(c, "M", "a star needs M >= 2");
  if (c.input.empty()) {
    if (c.d < 1) config_error(c, "d", "must be positive");
    if (c.N < 1 && c.node_samples.empty()) config_error(c, "N", "must be positive");
    if (c.spectrum.empty()) {
      if (!(c.eigengap > 0.0 && c.eigengap < 1.0)) {
        config_error(c, "eigengap",
                     "must lie in (0, 1); the top K+1 eigenvalues have to be distinct");
      }
    } else {
      try {
        SpectrumSpec(c.spectrum, c.d).require_distinct_top(std::min(c.K, c.d));
      } catch (const Error& e) {
        config_error(c, "spectrum", e.what());
      }
    }
  }
  if (!c.node_samples.empty()) {
    if (static_cast<int>(c.node_samples.size()) != c.M) {
      config_error(c, "node_samples", "needs one entry per node");
    }
    std::int64_t total = 0;
    for (auto n : c.node_samples) {
      if (n < 1) config_error(c, "node_samples", "entries must be positive");
      total += n;
    }
    if (c.lines.count("N") && total != c.N) {
      config_error(c, "node_samples", "entries must sum to N");
    }
  }
  if (c.K < 1) config_error(c, "K", "must be positive");
  if (c.input.empty() && c.K > c.d) config_error(c, "K", "must not exceed d");
  if (c.algorithm != "oi" && c.algorithm != "seqdistpm" &&
      !(c.alpha > 0.0 && std::isfinite(c.alpha))) {
    config_error(c, "alpha", "must be positive");
  }
  if (c.T < 0) config_error(c, "T", "must be >= 0");
  if (c.comm_budget < 0.0) config_error(c, "comm_budget", "must be >= 0");
  if (c.algorithm == "seqdistpm") {
    if (c.Tc < 1) config_error(c, "Tc", "must be >= 1");
    if (c.outer_iters < 1) config_error(c, "outer_iters", "must be >= 1");
  }
  if (c.trials < 1) config_error(c, "trials", "must be positive");
  if (c.jobs < 1) config_error(c, "jobs", "must be positive");
  if (c.stride < 0) config_error(c, "stride", "must be >= 0");
  if (c.partition != "equal" && c.partition != "shuffled") {
    config_error(c, "partition", "must be 'equal' or 'shuffled'");
  }
  if (c.probes && c.algorithm != "dsa" && c.algorithm != "gha_central" &&
      c.algorithm != "modified_gha") {
    config_error(c, "probes", "only available for dsa, gha_central and modified_gha");
  }

  ValidationReport report;
  const TrialSetup setup = build_trial(c, 0);
  const bool network = !is_centralized(c.algorithm);
  report.lambda1 = setup.problem.truth.values(0);
  report.min_self_weight = network ? setup.problem.mixing.min_self_weight() : 1.0;
  const int k = static_cast<int>(setup.problem.init.cols());
  report.step_bound = step_size_bound(report.lambda1, k, report.min_self_weight);
  const bool hebbian = c.algorithm == "dsa" || c.algorithm == "gha_central" ||
                       c.algorithm == "gha_local_only" || c.algorithm == "modified_gha";
  if (hebbian && c.alpha > report.step_bound) {
    report.warnings.push_back(
        "alpha = " + fmt(c.alpha) + " exceeds the sufficient step-size bound " +
        (network ? "min_i w_ii" : "1") + " / (3 lambda_1 (2K - 1)) = " +
        fmt(report.step_bound) + " (lambda_1 = " + fmt(report.lambda1) +
        ", K = " + std::to_string(k) + "); norm and convergence guarantees do not apply");
  }
  return report;
}

TrialSetup build_trial(const ExperimentConfig& c, int trial) {
  const std::uint64_t seed = c.seed + static_cast<std::uint64_t>(trial);
  const DataMatrix data = make_data(c, seed);
  Graph graph = make_graph(c, c.fixed_graph ? c.seed : seed);
  const std::vector<DataMatrix> parts = split(c, data, seed);
  Problem problem = make_problem(parts, graph, c.K, seed);
  return TrialSetup{seed, std::move(graph), std::move(problem)};
}

ExperimentResult run_trials(const ExperimentConfig& config) {
  validate_config(config);
  ExperimentResult result;
  result.config = config;
  result.trials.resize(static_cast<std::size_t>(config.trials));
  std::vector<std::exception_ptr> errors(result.trials.size());
  EigenBasis truth0;
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int t = next++; t < config.trials; t = next++) {
      const auto ut = static_cast<std::size_t>(t);
      try {
        const TrialSetup setup = build_trial(config, t);
        TrialOutcome outcome;
        outcome.trial = t;
        outcome.run = run_algorithm(config, setup.problem);
        outcome.probes = probe(config, setup.problem, outcome.run);
        outcome.run.snapshots.clear();
        if (t == 0) truth0 = setup.problem.truth;
        result.trials[ut] = std::move(outcome);
      } catch (...) {
        errors[ut] = std::current_exception();
      }
    }
  };
  const int jobs = std::max(1, std::min(config.jobs, config.trials));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  // Report the lowest failing trial so the outcome does not depend on timing.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  result.truth = std::move(truth0);
  std::vector<Trajectory> trajectories;
  for (const auto& t : result.trials) {
    trajectories.push_back(t.run.trajectory);
    if (t.run.flags & kFlagNonFinite) result.non_finite = true;
  }
  result.aggregate = aggregate(trajectories);
  return result;
}

std::vector<AggregateRow> aggregate(std::span<const Trajectory> trajectories) {
  std::vector<double> grid;
  for (const auto& t : trajectories) {
    for (const auto& r : t.rows) grid.push_back(r.comm_units);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::vector<AggregateRow> out;
  out.reserve(grid.size());
  std::vector<std::size_t> cursor(trajectories.size(), 0);
  std::vector<double> values;
  for (double g : grid) {
    values.clear();
    for (std::size_t i = 0; i < trajectories.size(); ++i) {
      const auto& rows = trajectories[i].rows;
      auto& c = cursor[i];
      while (c + 1 < rows.size() && rows[c + 1].comm_units <= g) ++c;
      if (!rows.empty() && rows[c].comm_units <= g) values.push_back(rows[c].error);
    }
    AggregateRow row;
    row.comm_units = g;
    row.n_trials = static_cast<int>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    row.mean_error = values.empty() ? 0.0 : sum / static_cast<double>(values.size());
    if (values.size() > 1) {
      double ss = 0.0;
      for (double v : values) ss += (v - row.mean_error) * (v - row.mean_error);
      row.std_error = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    out.push_back(row);
  }
  return out;
}

std::string trajectory_csv(int trial, const Trajectory& trajectory) {
  std::string out = "trial,iter,comm_units,error,consensus_dev,flags\n";
  for (const auto& r : trajectory.rows) {
    out += std::to_string(trial);
    out += ',';
    out += std::to_string(r.iteration);
    out += ',';
    out += fmt(r.comm_units);
    out += ',';
    out += fmt(r.error);
    out += ',';
    out += fmt(r.consensus_dev);
    out += ',';
    out += flag_names(r.flags);
    out += '\n';
  }
  return out;
}

std::string aggregate_csv(std::span<const AggregateRow> rows) {
  std::string out = "comm_units,mean_error,std_error,n_trials\n";
  for (const auto& r : rows) {
    out += fmt(r.comm_units) + ',' + fmt(r.mean_error) + ',' + fmt(r.std_error) + ',' +
           std::to_string(r.n_trials) + '\n';
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::kIoError, "write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::kIoError, "cannot rename onto " + path.string());
  }
}

void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::kIoError, "cannot create output directory " + dir.string());
  }
  for (const auto& t : result.trials) {
    write_file_atomic(dir / ("trial_" + std::to_string(t.trial) + ".csv"),
                      trajectory_csv(t.trial, t.run.trajectory));
    if (t.probes) {
      std::ostringstream csv;
      t.probes->write_csv(csv);
      write_file_atomic(dir / ("probes_" + std::to_string(t.trial) + ".csv"), csv.str());
      std::ostringstream summary;
      t.probes->write_summary(summary);
      write_file_atomic(dir / ("probes_" + std::to_string(t.trial) + ".txt"),
                        summary.str());
    }
  }
  write_file_atomic(dir / "aggregate.csv", aggregate_csv(result.aggregate));
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  ExperimentResult result = run_trials(config);
  write_outputs(result, config.out);
  return result;
}

std::string MergedTable::csv() const {
  std::string out = "comm_units";
  for (const auto& c : columns) out += ',' + c;
  out += '\n';
  for (std::size_t r = 0; r < comm_units.size(); ++r) {
    out += fmt(comm_units[r]);
    for (const auto& col : values) out += ',' + fmt(col[r]);
    out += '\n';
  }
  return out;
}

MergedTable merge_results(std::span<const ExperimentResult> results) {
  if (results.empty()) {
    throw Error(ErrorCode::kConfigError, "compare needs at least one config");
  }
  const EigenBasis& ref = results.front().truth;
  for (const auto& r : results.subspan(1)) {
    if (!same_basis(ref, r.truth)) {
      throw Error(ErrorCode::kConfigError,
                  r.config.source + ": reference eigenvectors differ from " +
                      results.front().config.source + " (d, K, data or seed mismatch)");
    }
  }
  MergedTable table;
  std::map<std::string, int> used;
  for (const auto& r : results) {
    const int n = ++used[r.config.algorithm];
    table.columns.push_back(n == 1 ? r.config.algorithm
                                   : r.config.algorithm + "_" + std::to_string(n));
    for (const auto& a : r.aggregate) table.comm_units.push_back(a.comm_units);
  }
  std::sort(table.comm_units.begin(), table.comm_units.end());
  table.comm_units.erase(std::unique(table.comm_units.begin(), table.comm_units.end()),
                         table.comm_units.end());
  for (const auto& r : results) {
    std::vector<double> col;
    col.reserve(table.comm_units.size());
    std::size_t c = 0;
    const auto& rows = r.aggregate;
    for (double g : table.comm_units) {
      while (c + 1 < rows.size() && rows[c + 1].comm_units <= g) ++c;
      col.push_back(rows[c].mean_error);
    }
    table.values.push_back(std::move(col));
  }
  return table;
}

MergedTable compare(std::span<const ExperimentConfig> configs) {
  if (configs.empty()) {
    throw Error(ErrorCode::kConfigError, "compare needs at least one config");
  }
  std::vector<ExperimentResult> results;
  for (const auto& c : configs) results.push_back(run_trials(c));
  return merge_results(results);
}

}  // namespace sangernet
