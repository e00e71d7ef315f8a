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

#ifndef SANGERNET_DISTRIBUTED_H_
#define SANGERNET_DISTRIBUTED_H_

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "sangernet/datamodel.h"
#include "sangernet/hebbian.h"
#include "sangernet/linalg.h"
#include "sangernet/topology.h"
#include "sangernet/trace.h"

namespace sangernet {

// Per-node estimates plus the shared, immutable network description.
// Copying a state copies the estimates only.
struct NetworkState {
  std::vector<Matrix> estimates;  // X_i, all d x K
  std::shared_ptr<const std::vector<CovarianceMatrix>> covariances;
  std::shared_ptr<const MixingMatrix> mixing;
  std::int64_t iteration = 0;
  // One unit is one d x K matrix sent by every node to its neighbours.
  double comm_units = 0.0;

  // Every node starts from `init`.
  static NetworkState create(std::vector<CovarianceMatrix> covariances,
                             MixingMatrix mixing, const Matrix& init);

  int nodes() const { return static_cast<int>(estimates.size()); }
};

// X_i <- sum_j w_ij X_j + alpha H(C_i, X_i), all nodes reading the pre-step
// iterates. The overload with `order` visits nodes in that order; the result
// does not depend on it.
NetworkState dsa_step(const NetworkState& state, double alpha);
NetworkState dsa_step(const NetworkState& state, double alpha,
                      std::span<const int> order);

// X_i <- qr(sum_j w_ij X_j + 2 alpha C_i X_i) with positive R diagonal.
NetworkState dpgd_step(const NetworkState& state, double alpha);

struct AverageView {
  Matrix xbar;  // (1/M) sum_i X_i
  Matrix h;     // column k: (1/M) sum_i (H_i(x_ik) - H_i(xbar_k))
};

AverageView average_view(const NetworkState& state);

// Everything a simulation needs, derived once per trial.
struct Problem {
  // Local matrices scaled by M N_i / N so that their mean is the global
  // covariance (for equal partitions the scale is exactly 1).
  std::vector<CovarianceMatrix> local;
  CovarianceMatrix global;
  MixingMatrix mixing;
  EigenBasis truth;  // top-K eigenpairs of `global`
  Matrix init;       // shared orthonormal initialization
};

// Builds local and global covariances, Metropolis weights, the orthogonal
// iteration reference (tol 1e-12), and a seeded orthonormal init.
Problem make_problem(std::span<const DataMatrix> parts, const Graph& graph,
                     int k, std::uint64_t init_seed);

struct RunOptions {
  double alpha = 0.1;
  std::int64_t iterations = 1000;
  double comm_budget = 0.0;  // > 0 stops once comm_units reaches it
  std::int64_t snapshot_stride = 10;
  bool keep_snapshots = false;
};

struct RunResult {
  Trajectory trajectory;
  std::vector<Snapshot> snapshots;
  std::uint32_t flags = kFlagNone;
  std::vector<int> phase;  // per trajectory row; sequential methods only
};

RunResult dsa_run(const Problem& problem, const RunOptions& options);
RunResult dsa_run(std::span<const DataMatrix> parts, const Graph& graph, int k,
                  double alpha, std::int64_t iterations, std::uint64_t seed);
RunResult dpgd_run(const Problem& problem, const RunOptions& options);

// Baselines without communication. comm_units counts rounds so that their
// curves share the x axis with the one-round-per-iteration methods.
RunResult gha_central_run(const Problem& problem, const RunOptions& options);
RunResult gha_local_only_run(const Problem& problem, const RunOptions& options);
RunResult modified_gha_central_run(const Problem& problem,
                                   const RunOptions& options);
RunResult oi_run(const Problem& problem, const RunOptions& options);

struct SeqDistPmOptions {
  int consensus_rounds = 50;      // Tc
  std::int64_t outer_iters = 100; // power steps per eigenvector
  double comm_budget = 0.0;
  std::int64_t snapshot_stride = 10;
  bool keep_snapshots = false;
};

// Sequential distributed power method. Eigenvector k runs `outer_iters`
// power steps on the locally deflated matrices
// C_i - sum_{p<k} lambda_ip q_ip q_ip^T, each followed by Tc averaging rounds
// and a local normalization; one power step costs Tc / K units. Columns not
// yet estimated stay at their initial values.
RunResult seqdistpm_run(const Problem& problem, const SeqDistPmOptions& options);

}  // namespace sangernet

#endif  // SANGERNET_DISTRIBUTED_H_
