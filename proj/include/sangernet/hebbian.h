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

#ifndef SANGERNET_HEBBIAN_H_
#define SANGERNET_HEBBIAN_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "sangernet/linalg.h"
#include "sangernet/trace.h"

namespace sangernet {

// Orthonormal eigenvector columns with strictly descending eigenvalues.
struct EigenBasis {
  Matrix vectors;  // d x K
  Vector values;   // K, descending

  Eigen::Index size() const { return vectors.cols(); }
};

// Keeps the diagonal and strictly upper part, zeroes everything below.
Matrix upper_triangular(const Matrix& m);

// H(C, X) = C X - X U(X^T C X).
Matrix sanger_direction(const Matrix& c, const Matrix& x);

// Column k (0-based) of the Sanger direction with x_k replaced by `xk`:
// C xk - (xk^T C xk) xk - sum_{p<k} x_p x_p^T C xk.
Vector sanger_column(const Matrix& c, const Matrix& x, Eigen::Index k,
                     const Vector& xk);

// w / (3 lambda_1 (2K - 1)). With w = 1 this is the centralized bound, with
// w = min_i w_ii the distributed one.
double step_size_bound(double lambda1, int k, double self_weight = 1.0);

struct GhaOptions {
  double alpha = 0.1;
  std::int64_t iterations = 1000;
  // Estimates are kept every `snapshot_stride` iterations (plus the first
  // and last); 0 keeps only the first and last.
  std::int64_t snapshot_stride = 10;
  // Called with every iterate, including the initial one.
  std::function<void(std::int64_t, const Matrix&)> observer;
};

struct IterateTrace {
  std::vector<Snapshot> snapshots;
  Matrix final;
  std::uint32_t flags = kFlagNone;
};

// Full-batch GHA: X <- X + alpha H(C, X).
IterateTrace gha_run(const Matrix& c, const Matrix& init,
                     const GhaOptions& options);

// Analysis variant where column k deflates with the true eigenvectors:
// x_k <- x_k + alpha (C x_k - (x_k^T C x_k) x_k - sum_{p<k} q_p q_p^T C x_k).
IterateTrace modified_gha_run(const Matrix& c, const Matrix& init,
                              const EigenBasis& truth,
                              const GhaOptions& options);

// Top-K eigenpairs by orthogonal (subspace) iteration with Rayleigh-Ritz
// rotation. Converged when every residual ||C q_k - lambda_k q_k|| is below
// tol * max(1, lambda_1). Columns are sign-normalized so that each column's
// largest-magnitude entry is positive. Throws kDegenerateSpectrum when two of
// the top K (or the K-th and (K+1)-th) eigenvalues are within 1e-12
// relative, when lambda_K is zero, or when max_iter is exhausted.
EigenBasis orthogonal_iteration(const Matrix& c, int k, double tol = 1e-12,
                                int max_iter = 100000);

// All d eigenpairs via a dense symmetric eigensolver (descending, same sign
// convention). Ties are allowed; used for coefficient expansions.
EigenBasis full_eigenbasis(const Matrix& c);

// Flips column signs so each column's largest-magnitude entry is positive.
void normalize_signs(Matrix& vectors);

// z = Q^T x.
Vector coefficients(const Vector& x, const EigenBasis& basis);

}  // namespace sangernet

#endif  // SANGERNET_HEBBIAN_H_
