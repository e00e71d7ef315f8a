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

#include "sangernet/hebbian.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sangernet/error.h"

namespace sangernet {
namespace {

constexpr double kSqrt3 = 1.7320508075688772;

void check_dims(const Matrix& c, const Matrix& x) {
  if (c.rows() != c.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "covariance must be square");
  }
  if (x.rows() != c.rows() || x.cols() < 1 || x.cols() > x.rows()) {
    throw Error(ErrorCode::kInvalidArgument,
                "estimate must be d x K with 1 <= K <= d");
  }
}

std::uint32_t init_flags(const Matrix& init) {
  std::uint32_t flags = kFlagNone;
  for (Eigen::Index k = 0; k < init.cols(); ++k) {
    if (std::abs(init.col(k).norm() - 1.0) > 1e-10) flags |= kFlagInitNotUnit;
  }
  return flags;
}

std::uint32_t iterate_flags(const Matrix& x) {
  if (!x.allFinite()) return kFlagNonFinite;
  return x.colwise().norm().maxCoeff() >= kSqrt3 ? kFlagNormBound : kFlagNone;
}

// Shared driver: `step` maps X^(t) to X^(t+1).
template <typename Step>
IterateTrace run_iterations(const Matrix& init, const GhaOptions& options,
                            std::uint32_t flags, Step step) {
  if (options.iterations < 0) {
    throw Error(ErrorCode::kInvalidArgument, "iteration count must be >= 0");
  }
  IterateTrace trace;
  trace.flags = flags | init_flags(init);
  Matrix x = init;
  trace.snapshots.push_back({0, {x}});
  if (options.observer) options.observer(0, x);
  std::int64_t t = 0;
  while (t < options.iterations) {
    x = step(x);
    ++t;
    const std::uint32_t f = iterate_flags(x);
    trace.flags |= f;
    if (f & kFlagNonFinite) break;
    if (options.observer) options.observer(t, x);
    if (options.snapshot_stride > 0 && t % options.snapshot_stride == 0 &&
        t != options.iterations) {
      trace.snapshots.push_back({t, {x}});
    }
  }
  if (trace.snapshots.back().iteration != t) trace.snapshots.push_back({t, {x}});
  trace.final = std::move(x);
  return trace;
}

}  // namespace

Matrix upper_triangular(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "upper_triangular needs a square matrix");
  }
  return m.triangularView<Eigen::Upper>();
}

Matrix sanger_direction(const Matrix& c, const Matrix& x) {
  check_dims(c, x);
  const Matrix cx = c * x;
  const Matrix gram = x.transpose() * cx;
  return cx - x * gram.triangularView<Eigen::Upper>().toDenseMatrix();
}

Vector sanger_column(const Matrix& c, const Matrix& x, Eigen::Index k,
                     const Vector& xk) {
  check_dims(c, x);
  const Vector cxk = c * xk;
  Vector out = cxk - xk.dot(cxk) * xk;
  for (Eigen::Index p = 0; p < k; ++p) {
    out -= x.col(p).dot(cxk) * x.col(p);
  }
  return out;
}

double step_size_bound(double lambda1, int k, double self_weight) {
  return self_weight / (3.0 * lambda1 * (2.0 * k - 1.0));
}

IterateTrace gha_run(const Matrix& c, const Matrix& init,
                     const GhaOptions& options) {
  check_dims(c, init);
  const int k = static_cast<int>(init.cols());
  std::uint32_t flags = kFlagNone;
  if (options.alpha > step_size_bound(top_eigenvalue(c), k)) {
    flags |= kFlagStepAboveBound;
  }
  const double alpha = options.alpha;
  return run_iterations(init, options, flags, [&](const Matrix& x) {
    return Matrix(x + alpha * sanger_direction(c, x));
  });
}

IterateTrace modified_gha_run(const Matrix& c, const Matrix& init,
                              const EigenBasis& truth,
                              const GhaOptions& options) {
  check_dims(c, init);
  const Eigen::Index k = init.cols();
  if (truth.vectors.rows() != c.rows() || truth.size() < k - 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "modified GHA needs the first K-1 true eigenvectors");
  }
  std::uint32_t flags = kFlagNone;
  if (options.alpha > step_size_bound(top_eigenvalue(c), static_cast<int>(k))) {
    flags |= kFlagStepAboveBound;
  }
  for (Eigen::Index j = 0; j < std::min(k, truth.size()); ++j) {
    if (std::abs(truth.vectors.col(j).dot(init.col(j))) < 1e-12) {
      flags |= kFlagInitOrthogonal;
    }
  }
  const double alpha = options.alpha;
  return run_iterations(init, options, flags, [&](const Matrix& x) {
    const Matrix cx = c * x;
    Matrix next = x;
    for (Eigen::Index j = 0; j < k; ++j) {
      const double r = x.col(j).dot(cx.col(j));
      Vector dir = cx.col(j) - r * x.col(j);
      for (Eigen::Index p = 0; p < j; ++p) {
        dir -= truth.vectors.col(p).dot(cx.col(j)) * truth.vectors.col(p);
      }
      next.col(j) += alpha * dir;
    }
    return next;
  });
}

void normalize_signs(Matrix& vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    Eigen::Index arg = 0;
    vectors.col(j).cwiseAbs().maxCoeff(&arg);
    if (vectors(arg, j) < 0.0) vectors.col(j) = -vectors.col(j);
  }
}

EigenBasis orthogonal_iteration(const Matrix& c, int k, double tol,
                                int max_iter) {
  const Eigen::Index d = c.rows();
  if (c.cols() != d || k < 1 || k > d) {
    throw Error(ErrorCode::kInvalidArgument,
                "orthogonal_iteration needs a square matrix and 1 <= K <= d");
  }
  const Eigen::Index block = std::min<Eigen::Index>(d, 2 * k + 4);
  if (max_abs(c) == 0.0) {
    throw Error(ErrorCode::kDegenerateSpectrum, "zero matrix has no top-K eigenvectors");
  }
  // A small positive shift keeps C q full rank when C is singular; it does
  // not change eigenvectors or their order for a PSD input.
  const double shift = 1e-2 * c.diagonal().cwiseAbs().mean();
  const Matrix shifted = c + shift * Matrix::Identity(d, d);
  Rng rng(0x5eedULL, 0);
  Matrix q = random_orthonormal(d, block, rng);
  Vector theta;
  bool converged = false;
  for (int it = 0; it < max_iter; ++it) {
    q = qr_orthonormalize(shifted * q);
    const Matrix h = q.transpose() * c * q;
    Eigen::SelfAdjointEigenSolver<Matrix> ritz(0.5 * (h + h.transpose()));
    // Ascending order from the solver; reverse to descending.
    const Matrix v = ritz.eigenvectors().rowwise().reverse();
    theta = ritz.eigenvalues().reverse();
    q = q * v;
    const double scale = std::max(1.0, std::abs(theta(0)));
    converged = true;
    for (int j = 0; j < k; ++j) {
      const double residual = (c * q.col(j) - theta(j) * q.col(j)).norm();
      if (!(residual < tol * scale)) {
        converged = false;
        break;
      }
    }
    if (converged) break;
  }
  if (!converged) {
    throw Error(ErrorCode::kDegenerateSpectrum,
                "orthogonal iteration did not converge in " +
                    std::to_string(max_iter) + " iterations");
  }
  const double top = std::abs(theta(0));
  for (int j = 0; j < k; ++j) {
    if (theta(j) <= 1e-12 * top) {
      throw Error(ErrorCode::kDegenerateSpectrum,
                  "top-K eigenvalues must be nonzero");
    }
    if (j + 1 < theta.size() && theta(j) - theta(j + 1) <= 1e-12 * top) {
      throw Error(ErrorCode::kDegenerateSpectrum,
                  "eigenvalue gap below 1e-12 at index " + std::to_string(j + 1));
    }
  }
  EigenBasis basis{q.leftCols(k), theta.head(k)};
  normalize_signs(basis.vectors);
  return basis;
}

EigenBasis full_eigenbasis(const Matrix& c) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (c + c.transpose()));
  EigenBasis basis{solver.eigenvectors().rowwise().reverse(),
                   solver.eigenvalues().reverse()};
  normalize_signs(basis.vectors);
  return basis;
}

Vector coefficients(const Vector& x, const EigenBasis& basis) {
  if (x.size() != basis.vectors.rows()) {
    throw Error(ErrorCode::kInvalidArgument, "coefficient expansion: size mismatch");
  }
  return basis.vectors.transpose() * x;
}

}  // namespace sangernet
