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

#include "sangernet/datamodel.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>

#include "sangernet/error.h"

namespace sangernet {
namespace {

constexpr char kMagic[4] = {'D', 'P', 'C', 'A'};

static_assert(std::endian::native == std::endian::little,
              "binary matrix IO assumes a little-endian host");

void put_u32(std::ostream& out, std::uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint32_t get_u32(std::istream& in) {
  std::uint32_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  return v;
}

bool parse_double(std::string_view field, double& out) {
  std::string s(field);
  // Trim surrounding whitespace.
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return false;
  const auto last = s.find_last_not_of(" \t\r");
  s = s.substr(first, last - first + 1);
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace

DataMatrix::DataMatrix(Matrix values) : values_(std::move(values)) {
  if (values_.rows() < 1 || values_.cols() < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "data matrix needs at least one feature and one sample");
  }
  if (!values_.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument,
                "data matrix contains non-finite entries");
  }
}

SpectrumSpec::SpectrumSpec(std::vector<double> eigenvalues, Eigen::Index dim)
    : eigenvalues_(std::move(eigenvalues)) {
  if (dim < 1) {
    throw Error(ErrorCode::kInvalidSpectrum, "spectrum dimension must be >= 1");
  }
  if (static_cast<Eigen::Index>(eigenvalues_.size()) > dim) {
    throw Error(ErrorCode::kInvalidSpectrum,
                "spectrum has more eigenvalues than the dimension");
  }
  for (std::size_t l = 0; l < eigenvalues_.size(); ++l) {
    if (!std::isfinite(eigenvalues_[l]) || eigenvalues_[l] < 0.0) {
      throw Error(ErrorCode::kInvalidSpectrum,
                  "spectrum entries must be finite and nonnegative");
    }
    if (l > 0 && eigenvalues_[l] > eigenvalues_[l - 1]) {
      throw Error(ErrorCode::kInvalidSpectrum,
                  "spectrum must be in descending order");
    }
  }
  eigenvalues_.resize(static_cast<std::size_t>(dim), 0.0);
}

SpectrumSpec SpectrumSpec::geometric(Eigen::Index dim, double gap) {
  if (!(gap > 0.0 && gap < 1.0)) {
    throw Error(ErrorCode::kInvalidSpectrum, "eigengap must lie in (0, 1)");
  }
  std::vector<double> values(static_cast<std::size_t>(dim));
  double v = 1.0;
  for (auto& x : values) {
    x = v;
    v *= gap;
  }
  const double trace = std::accumulate(values.begin(), values.end(), 0.0);
  for (auto& x : values) x /= trace;
  return SpectrumSpec(std::move(values), dim);
}

double SpectrumSpec::eigengap(int k) const {
  if (k < 1 || k > dim()) {
    throw Error(ErrorCode::kInvalidArgument, "eigengap index out of range");
  }
  if (k == dim()) return 0.0;
  const double top = eigenvalues_[static_cast<std::size_t>(k - 1)];
  return top > 0.0 ? eigenvalues_[static_cast<std::size_t>(k)] / top : 1.0;
}

void SpectrumSpec::require_distinct_top(int k) const {
  if (k < 1 || k > dim()) {
    throw Error(ErrorCode::kInvalidArgument, "K must lie in [1, d]");
  }
  for (int l = 0; l < k; ++l) {
    const double v = eigenvalues_[static_cast<std::size_t>(l)];
    if (v <= 0.0) {
      throw Error(ErrorCode::kDegenerateSpectrum,
                  "top-K eigenvalues must be nonzero");
    }
    // The (K+1)-th value only needs to be strictly smaller than the K-th.
    const double next = l + 1 < dim() ? eigenvalues_[static_cast<std::size_t>(l + 1)] : 0.0;
    if (v - next <= 1e-12 * v) {
      throw Error(ErrorCode::kDegenerateSpectrum,
                  "top-K eigenvalues must be distinct (lambda_" +
                      std::to_string(l + 1) + " ties its successor)");
    }
  }
}

CovarianceMatrix::CovarianceMatrix(Matrix values, std::int64_t sample_count)
    : values_(std::move(values)), sample_count_(sample_count) {
  if (values_.rows() != values_.cols() || values_.rows() < 1) {
    throw Error(ErrorCode::kInvalidArgument, "covariance must be square");
  }
  const double scale = std::max(1.0, max_abs(values_));
  if (max_abs(values_ - values_.transpose()) > 1e-12 * scale) {
    throw Error(ErrorCode::kInvalidArgument, "covariance must be symmetric");
  }
}

Matrix random_rotation(Eigen::Index dim, std::uint64_t seed) {
  Rng rng(seed, kDataStream);
  return random_orthonormal(dim, dim, rng);
}

DataMatrix generate_gaussian(Eigen::Index dim, Eigen::Index samples,
                             const SpectrumSpec& spectrum, std::uint64_t seed) {
  if (dim < 1 || samples < 1) {
    throw Error(ErrorCode::kInvalidArgument, "d and N must be positive");
  }
  if (spectrum.dim() != dim) {
    throw Error(ErrorCode::kInvalidSpectrum,
                "spectrum must have exactly d eigenvalues");
  }
  const Matrix rotation = random_rotation(dim, seed);
  Vector scale(dim);
  for (Eigen::Index l = 0; l < dim; ++l) {
    scale(l) = std::sqrt(spectrum.eigenvalues()[static_cast<std::size_t>(l)]);
  }
  // Separate stream for the samples so the rotation does not depend on N.
  Rng rng(seed, kDataStream + 0x100);
  Matrix white = gaussian_matrix(dim, samples, rng);
  return DataMatrix(rotation * scale.asDiagonal() * white);
}

DataMatrix center(const DataMatrix& data) {
  const Vector mean = data.values().rowwise().mean();
  return DataMatrix(data.values().colwise() - mean);
}

std::vector<DataMatrix> partition(const DataMatrix& data, int parts,
                                  const PartitionScheme& scheme) {
  const Eigen::Index n = data.samples();
  if (parts < 1) {
    throw Error(ErrorCode::kInfeasiblePartition, "M must be >= 1");
  }
  std::vector<Eigen::Index> sizes;
  if (scheme.kind == PartitionScheme::Kind::kSizes) {
    if (static_cast<int>(scheme.sizes.size()) != parts) {
      throw Error(ErrorCode::kInfeasiblePartition,
                  "partition size list must have M entries");
    }
    sizes = scheme.sizes;
    const Eigen::Index total =
        std::accumulate(sizes.begin(), sizes.end(), Eigen::Index{0});
    const bool positive = std::all_of(sizes.begin(), sizes.end(),
                                      [](Eigen::Index s) { return s >= 1; });
    if (total != n || !positive) {
      throw Error(ErrorCode::kInfeasiblePartition,
                  "partition sizes must be positive and sum to N");
    }
  } else {
    if (parts > n) {
      throw Error(ErrorCode::kInfeasiblePartition,
                  "cannot split " + std::to_string(n) + " samples over " +
                      std::to_string(parts) + " nodes");
    }
    sizes.assign(static_cast<std::size_t>(parts), n / parts);
    for (Eigen::Index i = 0; i < n % parts; ++i) ++sizes[static_cast<std::size_t>(i)];
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  if (scheme.kind == PartitionScheme::Kind::kShuffled) {
    Rng rng(scheme.seed, kShuffleStream);
    // Fisher-Yates with an explicit draw so the permutation is stable
    // across standard library implementations.
    for (Eigen::Index i = n - 1; i > 0; --i) {
      const auto j = static_cast<Eigen::Index>(rng.engine()() % static_cast<std::uint64_t>(i + 1));
      std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
    }
  }

  std::vector<DataMatrix> out;
  out.reserve(sizes.size());
  Eigen::Index offset = 0;
  for (Eigen::Index size : sizes) {
    Matrix block(data.dim(), size);
    for (Eigen::Index c = 0; c < size; ++c) {
      block.col(c) = data.values().col(order[static_cast<std::size_t>(offset + c)]);
    }
    out.emplace_back(std::move(block));
    offset += size;
  }
  return out;
}

CovarianceMatrix covariance(const DataMatrix& data) {
  const auto n = data.samples();
  Matrix c = Matrix::Zero(data.dim(), data.dim());
  c.selfadjointView<Eigen::Lower>().rankUpdate(data.values(), 1.0 / static_cast<double>(n));
  Matrix full = c.selfadjointView<Eigen::Lower>();
  return CovarianceMatrix(std::move(full), n);
}

CovarianceMatrix pooled_covariance(std::span<const CovarianceMatrix> parts) {
  if (parts.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no covariances to pool");
  }
  if (parts.size() == 1) return parts.front();
  Matrix sum = Matrix::Zero(parts.front().dim(), parts.front().dim());
  std::int64_t total = 0;
  for (const auto& part : parts) {
    if (part.dim() != sum.rows()) {
      throw Error(ErrorCode::kInvalidArgument, "covariance dimensions differ");
    }
    sum += static_cast<double>(part.sample_count()) * part.values();
    total += part.sample_count();
  }
  sum /= static_cast<double>(total);
  return CovarianceMatrix(0.5 * (sum + sum.transpose()), total);
}

void write_binary(const std::filesystem::path& path, const DataMatrix& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  out.write(kMagic, sizeof(kMagic));
  put_u32(out, static_cast<std::uint32_t>(data.dim()));
  put_u32(out, static_cast<std::uint32_t>(data.samples()));
  out.write(reinterpret_cast<const char*>(data.values().data()),
            static_cast<std::streamsize>(sizeof(double) * data.values().size()));
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

DataMatrix read_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  char magic[4] = {};
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw Error(ErrorCode::kIoError, path.string() + ": bad magic, expected DPCA");
  }
  const std::uint32_t d = get_u32(in);
  const std::uint32_t n = get_u32(in);
  if (!in || d == 0 || n == 0) {
    throw Error(ErrorCode::kIoError, path.string() + ": bad header");
  }
  Matrix values(d, n);
  in.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(sizeof(double) * values.size()));
  if (!in) throw Error(ErrorCode::kIoError, path.string() + ": truncated payload");
  return DataMatrix(std::move(values));
}

DataMatrix read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    bool numeric = true;
    for (auto field : split_fields(line)) {
      double v = 0.0;
      if (!parse_double(field, v)) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (rows.empty() && line_no == 1) continue;  // header
      throw Error(ErrorCode::kIoError, path.string() + ":" +
                                           std::to_string(line_no) +
                                           ": non-numeric field");
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorCode::kIoError, path.string() + ":" +
                                           std::to_string(line_no) +
                                           ": ragged row");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::kIoError, path.string() + ": no data rows");
  Matrix values(static_cast<Eigen::Index>(rows.size()),
                static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return DataMatrix(std::move(values));
}

void write_csv(const std::filesystem::path& path, const DataMatrix& data) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  out.precision(17);
  for (Eigen::Index i = 0; i < data.dim(); ++i) {
    for (Eigen::Index j = 0; j < data.samples(); ++j) {
      if (j > 0) out << ',';
      out << data.values()(i, j);
    }
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

DataMatrix read_matrix(const std::filesystem::path& path) {
  return path.extension() == ".csv" ? read_csv(path) : read_binary(path);
}

}  // namespace sangernet
