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

#ifndef SANGERNET_DATAMODEL_H_
#define SANGERNET_DATAMODEL_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "sangernet/linalg.h"

namespace sangernet {

// d x N sample matrix; each column is one sample.
class DataMatrix {
 public:
  // Throws kInvalidArgument on an empty matrix or non-finite entries.
  explicit DataMatrix(Matrix values);

  const Matrix& values() const { return values_; }
  Eigen::Index dim() const { return values_.rows(); }
  Eigen::Index samples() const { return values_.cols(); }

 private:
  Matrix values_;
};

// Population spectrum: descending nonnegative eigenvalues, one per feature.
class SpectrumSpec {
 public:
  // Shorter lists are padded with zeros up to `dim`. Throws
  // kInvalidSpectrum when the list is negative, ascending somewhere, or
  // longer than `dim`.
  SpectrumSpec(std::vector<double> eigenvalues, Eigen::Index dim);

  // lambda_l proportional to gap^(l-1), scaled to unit trace. Every
  // consecutive ratio equals `gap`, so the eigengap is `gap` for any K.
  static SpectrumSpec geometric(Eigen::Index dim, double gap);

  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  Eigen::Index dim() const {
    return static_cast<Eigen::Index>(eigenvalues_.size());
  }
  // lambda_{K+1} / lambda_K (0 when K == dim).
  double eigengap(int k) const;
  // Throws kDegenerateSpectrum unless the top `k` eigenvalues are strictly
  // positive and strictly decreasing.
  void require_distinct_top(int k) const;

 private:
  std::vector<double> eigenvalues_;
};

class CovarianceMatrix {
 public:
  CovarianceMatrix(Matrix values, std::int64_t sample_count);

  const Matrix& values() const { return values_; }
  std::int64_t sample_count() const { return sample_count_; }
  Eigen::Index dim() const { return values_.rows(); }

 private:
  Matrix values_;
  std::int64_t sample_count_;
};

DataMatrix generate_gaussian(Eigen::Index dim, Eigen::Index samples,
                             const SpectrumSpec& spectrum, std::uint64_t seed);

// Seeded orthogonal matrix used to rotate the diagonal spectrum.
Matrix random_rotation(Eigen::Index dim, std::uint64_t seed);

DataMatrix center(const DataMatrix& data);

struct PartitionScheme {
  enum class Kind { kEqual, kSizes, kShuffled };

  Kind kind = Kind::kEqual;
  std::vector<Eigen::Index> sizes;  // kSizes only; must sum to N
  std::uint64_t seed = 0;           // kShuffled only

  static PartitionScheme equal() { return {}; }
  static PartitionScheme with_sizes(std::vector<Eigen::Index> sizes) {
    return {Kind::kSizes, std::move(sizes), 0};
  }
  static PartitionScheme shuffled(std::uint64_t seed) {
    return {Kind::kShuffled, {}, seed};
  }
};

// Splits columns into `parts` contiguous blocks (equal scheme: the first
// N mod M blocks receive one extra column). The shuffled scheme applies a
// seeded column permutation before the equal split.
std::vector<DataMatrix> partition(const DataMatrix& data, int parts,
                                  const PartitionScheme& scheme);

// C = (1/N) Y Y^T.
CovarianceMatrix covariance(const DataMatrix& data);

// (1/N) sum_i N_i C_i: recombines local covariances into the global one.
CovarianceMatrix pooled_covariance(std::span<const CovarianceMatrix> parts);

// Binary layout: "DPCA", u32 d, u32 N, then d*N little-endian float64 in
// column-major order.
void write_binary(const std::filesystem::path& path, const DataMatrix& data);
DataMatrix read_binary(const std::filesystem::path& path);

// Rows are features, columns are samples. A first row containing any
// non-numeric field is treated as a header and skipped.
DataMatrix read_csv(const std::filesystem::path& path);
void write_csv(const std::filesystem::path& path, const DataMatrix& data);

// Dispatches on extension: ".csv" reads CSV, anything else the binary format.
DataMatrix read_matrix(const std::filesystem::path& path);

}  // namespace sangernet

#endif  // SANGERNET_DATAMODEL_H_
