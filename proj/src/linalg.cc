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

#include "sangernet/linalg.h"

#include <cmath>
#include <string>

#include "sangernet/error.h"

namespace sangernet {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kInvalidSpectrum: return "invalid-spectrum";
    case ErrorCode::kInfeasiblePartition: return "infeasible-partition";
    case ErrorCode::kGenerationFailure: return "generation-failure";
    case ErrorCode::kDisconnectedGraph: return "disconnected-graph";
    case ErrorCode::kDegenerateSpectrum: return "degenerate-spectrum";
    case ErrorCode::kDegenerateIterate: return "degenerate-iterate";
    case ErrorCode::kUndefinedAngle: return "undefined-angle";
    case ErrorCode::kStateError: return "state-error";
    case ErrorCode::kInsufficientData: return "insufficient-data";
    case ErrorCode::kConfigError: return "config-error";
    case ErrorCode::kIoError: return "io-error";
  }
  return "unknown";
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Matrix m(rows, cols);
  // Column-major fill order is part of the reproducibility contract.
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.normal();
  }
  return m;
}

Matrix qr_orthonormalize(const Matrix& a) {
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  if (cols > rows) {
    throw Error(ErrorCode::kInvalidArgument,
                "qr_orthonormalize: more columns than rows");
  }
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  const Matrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  const double scale = std::max(1.0, a.norm());
  for (Eigen::Index k = 0; k < cols; ++k) {
    const double diag = r(k, k);
    if (!std::isfinite(diag) || std::abs(diag) <= 1e-13 * scale) {
      throw Error(ErrorCode::kDegenerateIterate,
                  "rank-deficient matrix in QR projection (column " +
                      std::to_string(k) + ")");
    }
    if (diag < 0.0) q.col(k) = -q.col(k);
  }
  return q;
}

Matrix random_orthonormal(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  return qr_orthonormalize(gaussian_matrix(rows, cols, rng));
}

double max_abs(const Matrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double top_eigenvalue(const Matrix& symmetric) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric,
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

}  // namespace sangernet
