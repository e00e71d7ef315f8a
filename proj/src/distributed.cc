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

#include "sangernet/distributed.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "sangernet/error.h"
#include "sangernet/metrics.h"

namespace sangernet {
namespace {

constexpr double kSqrt3 = 1.7320508075688772;

void check_state(const NetworkState& state) {
  if (!state.covariances || !state.mixing) {
    throw Error(ErrorCode::kStateError, "network state is not initialized");
  }
  const auto m = static_cast<std::size_t>(state.nodes());
  if (m == 0 || state.covariances->size() != m ||
      static_cast<std::size_t>(state.mixing->nodes()) != m) {
    throw Error(ErrorCode::kStateError,
                "estimates, covariances and mixing matrix disagree on M");
  }
  const auto& x0 = state.estimates.front();
  for (std::size_t i = 0; i < m; ++i) {
    const auto& x = state.estimates[i];
    if (x.rows() != x0.rows() || x.cols() != x0.cols()) {
      throw Error(ErrorCode::kStateError,
                  "estimate " + std::to_string(i) + " has a different shape");
    }
    if ((*state.covariances)[i].dim() != x.rows()) {
      throw Error(ErrorCode::kStateError,
                  "covariance " + std::to_string(i) + " does not match d");
    }
  }
}

// sum_j w_ij X_j over the nonzero weights of row i.
Matrix combine(const NetworkState& state, int i) {
  const Matrix& w = state.mixing->weights();
  Matrix acc = Matrix::Zero(state.estimates.front().rows(),
                            state.estimates.front().cols());
  for (int j = 0; j < state.nodes(); ++j) {
    const double wij = w(i, j);
    if (wij != 0.0) acc += wij * state.estimates[static_cast<std::size_t>(j)];
  }
  return acc;
}

std::vector<int> identity_order(int m) {
  std::vector<int> order(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) order[static_cast<std::size_t>(i)] = i;
  return order;
}

std::uint32_t estimate_flags(std::span<const Matrix> estimates) {
  std::uint32_t flags = kFlagNone;
  for (const auto& x : estimates) {
    if (!x.allFinite()) return kFlagNonFinite;
    if (x.colwise().norm().maxCoeff() >= kSqrt3) flags |= kFlagNormBound;
  }
  return flags;
}

// Collects rows and snapshots for the round-based runs.
class Recorder {
 public:
  Recorder(const EigenBasis& truth, std::int64_t stride, bool keep)
      : truth_(truth), stride_(stride), keep_(keep) {}

  void record(std::int64_t iteration, double comm,
              std::span<const Matrix> estimates, std::uint32_t flags,
              bool force_snapshot = false) {
    TrajectoryRow row;
    row.iteration = iteration;
    row.comm_units = comm;
    row.error = avg_angle_error(estimates, truth_);
    row.consensus_dev = consensus_deviation(estimates);
    row.flags = flags;
    result_.trajectory.rows.push_back(row);
    result_.flags |= flags;
    const bool on_stride = stride_ > 0 && iteration % stride_ == 0;
    if (keep_ && (iteration == 0 || on_stride || force_snapshot)) {
      result_.snapshots.push_back(
          {iteration, std::vector<Matrix>(estimates.begin(), estimates.end())});
    }
  }

  // Marks the last row, e.g. when the iterate stops being finite.
  void flag_last(std::uint32_t flags) {
    result_.trajectory.rows.back().flags |= flags;
    result_.flags |= flags;
  }

  void finish(std::int64_t iteration, std::span<const Matrix> estimates) {
    if (keep_ && (result_.snapshots.empty() ||
                  result_.snapshots.back().iteration != iteration)) {
      result_.snapshots.push_back(
          {iteration, std::vector<Matrix>(estimates.begin(), estimates.end())});
    }
  }

  RunResult take() { return std::move(result_); }
  RunResult& result() { return result_; }

 private:
  const EigenBasis& truth_;
  std::int64_t stride_;
  bool keep_;
  RunResult result_;
};

bool budget_reached(const RunOptions& options, double comm) {
  return options.comm_budget > 0.0 && comm >= options.comm_budget;
}

void check_options(const RunOptions& options) {
  if (!(options.alpha > 0.0) || !std::isfinite(options.alpha)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must be positive");
  }
  if (options.iterations < 0) {
    throw Error(ErrorCode::kInvalidArgument, "iteration count must be >= 0");
  }
}

void check_connected(const MixingMatrix& mixing) {
  if (mixing.nodes() > 1 && mixing.beta() >= 1.0 - 1e-12) {
    throw Error(ErrorCode::kDisconnectedGraph,
                "mixing matrix does not contract (beta = 1): graph is disconnected");
  }
}

NetworkState make_state(const Problem& problem) {
  return NetworkState::create(problem.local, problem.mixing, problem.init);
}

// Drives a round-based network method. `step` advances the state by one
// round.
template <typename Step>
RunResult run_network(const Problem& problem, const RunOptions& options,
                      std::uint32_t run_flags, Step step) {
  check_options(options);
  check_connected(problem.mixing);
  NetworkState state = make_state(problem);
  Recorder rec(problem.truth, options.snapshot_stride, options.keep_snapshots);
  rec.record(0, 0.0, state.estimates, run_flags | estimate_flags(state.estimates));
  while (state.iteration < options.iterations &&
         !budget_reached(options, state.comm_units)) {
    state = step(state);
    const std::uint32_t f = estimate_flags(state.estimates);
    if (f & kFlagNonFinite) {
      rec.flag_last(kFlagNonFinite);
      break;
    }
    rec.record(state.iteration, state.comm_units, state.estimates, f);
  }
  rec.finish(rec.result().trajectory.rows.back().iteration, state.estimates);
  return rec.take();
}

// Drives a method without communication; comm_units mirrors the iteration.
template <typename Step>
RunResult run_rounds(const Problem& problem, const RunOptions& options,
                     std::vector<Matrix> estimates, std::uint32_t run_flags,
                     Step step) {
  check_options(options);
  Recorder rec(problem.truth, options.snapshot_stride, options.keep_snapshots);
  rec.record(0, 0.0, estimates, run_flags | estimate_flags(estimates));
  std::int64_t t = 0;
  while (t < options.iterations &&
         !budget_reached(options, static_cast<double>(t))) {
    step(estimates);
    ++t;
    const std::uint32_t f = estimate_flags(estimates);
    if (f & kFlagNonFinite) {
      rec.flag_last(kFlagNonFinite);
      --t;
      break;
    }
    rec.record(t, static_cast<double>(t), estimates, f);
  }
  rec.finish(t, estimates);
  return rec.take();
}

std::uint32_t step_flag(const Problem& problem, double alpha,
                        double self_weight) {
  const int k = static_cast<int>(problem.init.cols());
  return alpha > step_size_bound(problem.truth.values(0), k, self_weight)
             ? kFlagStepAboveBound
             : kFlagNone;
}

}  // namespace

NetworkState NetworkState::create(std::vector<CovarianceMatrix> covariances,
                                  MixingMatrix mixing, const Matrix& init) {
  NetworkState state;
  state.estimates.assign(covariances.size(), init);
  state.covariances =
      std::make_shared<const std::vector<CovarianceMatrix>>(std::move(covariances));
  state.mixing = std::make_shared<const MixingMatrix>(std::move(mixing));
  check_state(state);
  return state;
}

NetworkState dsa_step(const NetworkState& state, double alpha) {
  const std::vector<int> order = identity_order(state.nodes());
  return dsa_step(state, alpha, order);
}

NetworkState dsa_step(const NetworkState& state, double alpha,
                      std::span<const int> order) {
  check_state(state);
  const int m = state.nodes();
  std::vector<bool> seen(static_cast<std::size_t>(m), false);
  if (order.size() != static_cast<std::size_t>(m)) {
    throw Error(ErrorCode::kStateError, "node order must list every node once");
  }
  for (int i : order) {
    if (i < 0 || i >= m || seen[static_cast<std::size_t>(i)]) {
      throw Error(ErrorCode::kStateError, "node order must list every node once");
    }
    seen[static_cast<std::size_t>(i)] = true;
  }
  NetworkState next = state;
  for (int i : order) {
    const auto ui = static_cast<std::size_t>(i);
    Matrix x = combine(state, i);
    x += alpha * sanger_direction((*state.covariances)[ui].values(),
                                  state.estimates[ui]);
    next.estimates[ui] = std::move(x);
  }
  next.iteration += 1;
  next.comm_units += 1.0;
  return next;
}

NetworkState dpgd_step(const NetworkState& state, double alpha) {
  check_state(state);
  NetworkState next = state;
  for (int i = 0; i < state.nodes(); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    Matrix x = combine(state, i);
    x += (2.0 * alpha) * ((*state.covariances)[ui].values() * state.estimates[ui]);
    next.estimates[ui] = qr_orthonormalize(x);
  }
  next.iteration += 1;
  next.comm_units += 1.0;
  return next;
}

AverageView average_view(const NetworkState& state) {
  check_state(state);
  const int m = state.nodes();
  const Matrix& x0 = state.estimates.front();
  AverageView view{Matrix::Zero(x0.rows(), x0.cols()),
                   Matrix::Zero(x0.rows(), x0.cols())};
  for (const auto& x : state.estimates) view.xbar += x;
  view.xbar /= static_cast<double>(m);
  for (int i = 0; i < m; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const Matrix& c = (*state.covariances)[ui].values();
    const Matrix& x = state.estimates[ui];
    const Matrix hx = sanger_direction(c, x);
    for (Eigen::Index k = 0; k < x.cols(); ++k) {
      view.h.col(k) +=
          hx.col(k) - sanger_column(c, x, k, view.xbar.col(k));
    }
  }
  view.h /= static_cast<double>(m);
  return view;
}

Problem make_problem(std::span<const DataMatrix> parts, const Graph& graph,
                     int k, std::uint64_t init_seed) {
  if (parts.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no data parts");
  }
  if (static_cast<std::size_t>(graph.nodes()) != parts.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "graph has " + std::to_string(graph.nodes()) + " nodes but " +
                    std::to_string(parts.size()) + " data parts were given");
  }
  const Eigen::Index d = parts.front().dim();
  if (k < 1 || k > d) {
    throw Error(ErrorCode::kInvalidArgument, "K must satisfy 1 <= K <= d");
  }
  MixingMatrix mixing = metropolis_weights(graph);
  std::vector<CovarianceMatrix> raw;
  raw.reserve(parts.size());
  std::int64_t total = 0;
  for (const auto& part : parts) {
    if (part.dim() != d) {
      throw Error(ErrorCode::kInvalidArgument, "data parts differ in dimension");
    }
    raw.push_back(covariance(part));
    total += part.samples();
  }
  CovarianceMatrix global = pooled_covariance(raw);
  std::vector<CovarianceMatrix> local;
  local.reserve(raw.size());
  const double m = static_cast<double>(raw.size());
  for (const auto& c : raw) {
    const double scale =
        m * static_cast<double>(c.sample_count()) / static_cast<double>(total);
    if (scale == 1.0) {
      local.push_back(c);
    } else {
      local.emplace_back(scale * c.values(), c.sample_count());
    }
  }
  EigenBasis truth = orthogonal_iteration(global.values(), k, 1e-12);
  Rng rng(init_seed, kInitStream);
  Matrix init = random_orthonormal(d, k, rng);
  return Problem{std::move(local), std::move(global), std::move(mixing),
                 std::move(truth), std::move(init)};
}

RunResult dsa_run(const Problem& problem, const RunOptions& options) {
  const double alpha = options.alpha;
  return run_network(
      problem, options,
      step_flag(problem, alpha, problem.mixing.min_self_weight()),
      [alpha](const NetworkState& s) { return dsa_step(s, alpha); });
}

RunResult dsa_run(std::span<const DataMatrix> parts, const Graph& graph, int k,
                  double alpha, std::int64_t iterations, std::uint64_t seed) {
  const Problem problem = make_problem(parts, graph, k, seed);
  RunOptions options;
  options.alpha = alpha;
  options.iterations = iterations;
  return dsa_run(problem, options);
}

RunResult dpgd_run(const Problem& problem, const RunOptions& options) {
  const double alpha = options.alpha;
  return run_network(problem, options, kFlagNone,
                     [alpha](const NetworkState& s) { return dpgd_step(s, alpha); });
}

RunResult gha_central_run(const Problem& problem, const RunOptions& options) {
  const Matrix& c = problem.global.values();
  const double alpha = options.alpha;
  return run_rounds(problem, options, {problem.init},
                    step_flag(problem, alpha, 1.0),
                    [&c, alpha](std::vector<Matrix>& xs) {
                      Matrix& x = xs.front();
                      x = x + alpha * sanger_direction(c, x);
                    });
}

RunResult gha_local_only_run(const Problem& problem, const RunOptions& options) {
  const double alpha = options.alpha;
  std::uint32_t flags = kFlagNone;
  for (const auto& c : problem.local) {
    const int k = static_cast<int>(problem.init.cols());
    if (alpha > step_size_bound(top_eigenvalue(c.values()), k)) {
      flags |= kFlagStepAboveBound;
    }
  }
  std::vector<Matrix> init(problem.local.size(), problem.init);
  return run_rounds(problem, options, std::move(init), flags,
                    [&problem, alpha](std::vector<Matrix>& xs) {
                      for (std::size_t i = 0; i < xs.size(); ++i) {
                        xs[i] = xs[i] + alpha * sanger_direction(
                                                    problem.local[i].values(), xs[i]);
                      }
                    });
}

RunResult modified_gha_central_run(const Problem& problem,
                                   const RunOptions& options) {
  const Matrix& c = problem.global.values();
  const Matrix& q = problem.truth.vectors;
  const double alpha = options.alpha;
  GhaOptions gha;
  gha.alpha = alpha;
  std::uint32_t flags = step_flag(problem, alpha, 1.0);
  for (Eigen::Index j = 0; j < problem.init.cols(); ++j) {
    if (std::abs(q.col(j).dot(problem.init.col(j))) < 1e-12) {
      flags |= kFlagInitOrthogonal;
    }
  }
  return run_rounds(problem, options, {problem.init}, flags,
                    [&c, &q, alpha](std::vector<Matrix>& xs) {
                      Matrix& x = xs.front();
                      const Matrix cx = c * x;
                      Matrix next = x;
                      for (Eigen::Index j = 0; j < x.cols(); ++j) {
                        const double r = x.col(j).dot(cx.col(j));
                        Vector dir = cx.col(j) - r * x.col(j);
                        for (Eigen::Index p = 0; p < j; ++p) {
                          dir -= q.col(p).dot(cx.col(j)) * q.col(p);
                        }
                        next.col(j) += alpha * dir;
                      }
                      x = std::move(next);
                    });
}

RunResult oi_run(const Problem& problem, const RunOptions& options) {
  const Matrix& c = problem.global.values();
  RunOptions opts = options;
  if (!(opts.alpha > 0.0)) opts.alpha = 1.0;  // unused by the method
  return run_rounds(problem, opts, {problem.init}, kFlagNone,
                    [&c](std::vector<Matrix>& xs) {
                      xs.front() = qr_orthonormalize(c * xs.front());
                    });
}

RunResult seqdistpm_run(const Problem& problem, const SeqDistPmOptions& options) {
  if (options.consensus_rounds < 1) {
    throw Error(ErrorCode::kInvalidArgument, "Tc must be >= 1");
  }
  if (options.outer_iters < 1) {
    throw Error(ErrorCode::kInvalidArgument, "outer_iters must be >= 1");
  }
  const int kk = static_cast<int>(problem.init.cols());
  // Total rounds Tc * outer_iters * K must stay an exact integer count.
  constexpr std::int64_t kMaxRounds = std::int64_t{1} << 53;
  const std::int64_t tc = options.consensus_rounds;
  if (options.outer_iters > kMaxRounds / tc / kk) {
    throw Error(ErrorCode::kInvalidArgument,
                "Tc * outer_iters * K exceeds the exact round-count range");
  }
  check_connected(problem.mixing);
  const int m = problem.mixing.nodes();
  const Matrix& w = problem.mixing.weights();
  const Eigen::Index d = problem.init.rows();

  std::vector<Matrix> estimates(static_cast<std::size_t>(m), problem.init);
  std::vector<Vector> lambda(static_cast<std::size_t>(m), Vector::Zero(kk));
  Recorder rec(problem.truth, options.snapshot_stride, options.keep_snapshots);
  rec.record(0, 0.0, estimates, estimate_flags(estimates));
  rec.result().phase.push_back(0);

  std::int64_t steps = 0;
  const auto comm_at = [&](std::int64_t s) {
    return static_cast<double>(s * tc) / static_cast<double>(kk);
  };
  bool stopped = false;
  Matrix v(d, m);
  Matrix mixed(d, m);
  for (int k = 0; k < kk && !stopped; ++k) {
    for (std::int64_t it = 0; it < options.outer_iters; ++it) {
      if (options.comm_budget > 0.0 && comm_at(steps) >= options.comm_budget) {
        stopped = true;
        break;
      }
      for (int i = 0; i < m; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        const Matrix& c = problem.local[ui].values();
        const Vector x = estimates[ui].col(k);
        Vector y = c * x;
        for (int p = 0; p < k; ++p) {
          const auto q = estimates[ui].col(p);
          y -= lambda[ui](p) * q.dot(x) * q;
        }
        v.col(i) = y;
      }
      // Each averaging round: v_i <- sum_j w_ij v_j.
      for (std::int64_t r = 0; r < tc; ++r) {
        mixed.noalias() = v * w;
        v.swap(mixed);
      }
      for (int i = 0; i < m; ++i) {
        const double norm = v.col(i).norm();
        if (!(norm > 0.0) || !std::isfinite(norm)) {
          throw Error(ErrorCode::kDegenerateIterate,
                      "power step collapsed to zero at node " + std::to_string(i));
        }
        estimates[static_cast<std::size_t>(i)].col(k) = v.col(i) / norm;
      }
      ++steps;
      rec.record(steps, comm_at(steps), estimates, estimate_flags(estimates));
      rec.result().phase.push_back(k);
    }
    for (int i = 0; i < m; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      const auto q = estimates[ui].col(k);
      lambda[ui](k) = rayleigh(problem.local[ui].values(), q);
    }
  }
  rec.finish(steps, estimates);
  return rec.take();
}

}  // namespace sangernet
