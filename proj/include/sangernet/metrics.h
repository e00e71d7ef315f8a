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

#ifndef SANGERNET_METRICS_H_
#define SANGERNET_METRICS_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sangernet/hebbian.h"
#include "sangernet/linalg.h"
#include "sangernet/trace.h"

namespace sangernet {

// E = 1/(MK) sum_i sum_k (1 - (x_ik^T q_k / ||x_ik||)^2), assuming unit
// truth columns. Throws kUndefinedAngle on a zero-norm estimate column.
double avg_angle_error(std::span<const Matrix> estimates,
                       const EigenBasis& truth);
double avg_angle_error(const Matrix& estimate, const EigenBasis& truth);

// Per-column squared-sine errors averaged over nodes.
Vector column_angle_errors(std::span<const Matrix> estimates,
                           const EigenBasis& truth);

// max over nodes and columns of ||x_ik - xbar_k||.
double consensus_deviation(std::span<const Matrix> estimates);
// Mean over nodes of max over columns of ||x_ik - xbar_k||.
double mean_consensus_deviation(std::span<const Matrix> estimates);

// Unnormalized x^T C x.
double rayleigh(const Matrix& c, const Vector& x);

// Largest principal-angle sine between span(X) and span(Q). Diagnostic only.
double subspace_distance(const Matrix& estimate, const Matrix& truth);

struct ProbeContext {
  std::vector<Matrix> local_covariances;  // C_i (one entry when centralized)
  Matrix global_covariance;
  EigenBasis truth;  // full d-column basis of the global covariance
  double alpha = 0.0;
  double beta = 0.0;
  double lambda1 = 0.0;            // largest eigenvalue of the global C
  double min_self_weight = 1.0;    // min_i w_ii (1 when centralized)
  // Deflation uses the true eigenvectors; enables the per-step upper
  // coefficient check for every column (otherwise only for k = 1).
  bool modified = false;
};

// One probe series with its bound check.
struct ProbeSeries {
  std::string name;
  std::vector<double> values;  // one per snapshot
  bool applicable = true;
  bool passed = true;
  std::string detail;
};

struct ProbeReport {
  std::vector<std::int64_t> iterations;
  std::vector<ProbeSeries> series;

  bool all_passed() const;
  const ProbeSeries* find(const std::string& name) const;
  // "iter,<series...>" then one line per snapshot, followed by nothing else;
  // pass/fail lives in write_summary.
  void write_csv(std::ostream& out) const;
  void write_summary(std::ostream& out) const;
};

// Evaluates the analysis bounds on a snapshot sequence:
//   norm_k       max_i ||x_ik||                   < sqrt(3)
//   rayleigh_k   max_i x_ik^T C_i x_ik            < 1/alpha
//   sanger_k     max_i ||H_i(x_ik)||^2 / (3 lambda_i1^2 (3k-2)(3k+1)) <= 1
//   hdev_k       ||h_k|| / (3(k+2) lambda_max max_i ||x_ik - xbar_k||) <= 1
//   lower_k      sum_{l<k} z_kl^2 of xbar_k, non-increasing after burn-in
//   upper_k      sum_{l>k} z_kl^2 of xbar_k; on consecutive snapshots the
//                ratio sum_{l>k}(z_kl/z_kk)^2 shrinks by at most rho_k
//   rayleigh_gap_k |lambda_k - xbar_k^T C xbar_k|  (reported)
//   consensus    max deviation, with fitted C = plateau (1-beta)/alpha
//   consensus_mean  mean-over-nodes deviation (reported)
//   step_size    alpha / (min_i w_ii / (3 lambda_1 (2K-1)))  <= 1
// Throws kInsufficientData when fewer than two snapshots are given.
ProbeReport bound_probes(std::span<const Snapshot> snapshots,
                         const ProbeContext& context);

}  // namespace sangernet

#endif  // SANGERNET_METRICS_H_
