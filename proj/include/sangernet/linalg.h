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

#ifndef SANGERNET_LINALG_H_
#define SANGERNET_LINALG_H_

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace sangernet {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Seeded random stream. Independent streams are derived from one seed so that
// data, graph, and initialization draws never interfere with each other.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

// Stream identifiers used throughout the harness.
inline constexpr std::uint64_t kDataStream = 1;
inline constexpr std::uint64_t kGraphStream = 2;
inline constexpr std::uint64_t kInitStream = 3;
inline constexpr std::uint64_t kShuffleStream = 4;

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);

// Thin Q factor of a Householder QR with the sign of each column chosen so
// that the diagonal of R is positive. Throws kDegenerateIterate when the
// input is numerically rank deficient.
Matrix qr_orthonormalize(const Matrix& a);

// rows x cols matrix with orthonormal columns: QR of a seeded Gaussian matrix.
Matrix random_orthonormal(Eigen::Index rows, Eigen::Index cols, Rng& rng);

double max_abs(const Matrix& a);

// Largest eigenvalue of a symmetric matrix.
double top_eigenvalue(const Matrix& symmetric);

}  // namespace sangernet

#endif  // SANGERNET_LINALG_H_
