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

#include <filesystem>
#include <fstream>
#include <numeric>

#include <gtest/gtest.h>

#include "sangernet/error.h"

namespace sangernet {
namespace {

namespace fs = std::filesystem;

template <typename F>
ErrorCode code_of(F f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kInvalidArgument;
}

fs::path temp_path(const std::string& name) {
  return fs::temp_directory_path() / ("sangernet_dm_" + name);
}

TEST(DataMatrixTest, RejectsEmptyAndNonFinite) {
  EXPECT_EQ(code_of([] { DataMatrix(Matrix(0, 0)); }), ErrorCode::kInvalidArgument);
  Matrix m = Matrix::Zero(2, 2);
  m(1, 1) = std::nan("");
  EXPECT_EQ(code_of([&] { DataMatrix{m}; }), ErrorCode::kInvalidArgument);
}

TEST(SpectrumTest, GeometricHasUnitTraceAndConstantGap) {
  const auto s = SpectrumSpec::geometric(10, 0.8);
  const auto& v = s.eigenvalues();
  EXPECT_NEAR(std::accumulate(v.begin(), v.end(), 0.0), 1.0, 1e-14);
  for (int k = 1; k < 10; ++k) EXPECT_NEAR(s.eigengap(k), 0.8, 1e-14);
  EXPECT_EQ(s.eigengap(10), 0.0);
}

TEST(SpectrumTest, PadsAndValidates) {
  SpectrumSpec s({3, 2}, 4);
  EXPECT_EQ(s.eigenvalues(), (std::vector<double>{3, 2, 0, 0}));
  EXPECT_EQ(code_of([] { SpectrumSpec({1, 2}, 2); }), ErrorCode::kInvalidSpectrum);
  EXPECT_EQ(code_of([] { SpectrumSpec({1, -1}, 2); }), ErrorCode::kInvalidSpectrum);
  EXPECT_EQ(code_of([] { SpectrumSpec({3, 2, 1}, 2); }), ErrorCode::kInvalidSpectrum);
  EXPECT_EQ(code_of([] { SpectrumSpec({2, 2, 1}, 3).require_distinct_top(1); }),
            ErrorCode::kDegenerateSpectrum);
  SpectrumSpec({3, 2, 2}, 3).require_distinct_top(1);
}

TEST(GenerateTest, DeterministicPerSeed) {
  const auto s = SpectrumSpec::geometric(5, 0.5);
  const auto a = generate_gaussian(5, 100, s, 7);
  const auto b = generate_gaussian(5, 100, s, 7);
  const auto c = generate_gaussian(5, 100, s, 8);
  EXPECT_TRUE((a.values().array() == b.values().array()).all());
  EXPECT_FALSE((a.values().array() == c.values().array()).all());
}

TEST(GenerateTest, SampleCovarianceApproachesPopulation) {
  const auto s = SpectrumSpec({4, 2, 1}, 3);
  const auto data = generate_gaussian(3, 200000, s, 3);
  const Matrix rot = random_rotation(3, 3);
  const Matrix pop = rot * Vector(Eigen::Vector3d(4, 2, 1)).asDiagonal() * rot.transpose();
  EXPECT_LT((covariance(data).values() - pop).norm() / pop.norm(), 0.02);
}

TEST(CenterTest, HandExample) {
  Matrix m(2, 3);
  m << 1, 2, 3, 4, 5, 6;
  Matrix want(2, 3);
  want << -1, 0, 1, -1, 0, 1;
  EXPECT_LT((center(DataMatrix(m)).values() - want).norm(), 1e-15);
}

TEST(PartitionTest, EqualSplitGivesRemainderToFirstBlocks) {
  Matrix m = Matrix::Zero(1, 7);
  for (int j = 0; j < 7; ++j) m(0, j) = j;
  const auto parts = partition(DataMatrix(m), 3, PartitionScheme::equal());
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0].samples(), 3);
  EXPECT_EQ(parts[1].samples(), 2);
  EXPECT_EQ(parts[2].samples(), 2);
  EXPECT_EQ(parts[1].values()(0, 0), 3.0);
}

TEST(PartitionTest, SizesAndInfeasible) {
  const DataMatrix d(Matrix::Ones(2, 5));
  const auto parts = partition(d, 2, PartitionScheme::with_sizes({1, 4}));
  EXPECT_EQ(parts[1].samples(), 4);
  EXPECT_EQ(code_of([&] { partition(d, 6, PartitionScheme::equal()); }),
            ErrorCode::kInfeasiblePartition);
  EXPECT_EQ(code_of([&] { partition(d, 2, PartitionScheme::with_sizes({1, 1})); }),
            ErrorCode::kInfeasiblePartition);
}

TEST(PartitionTest, ShuffledKeepsEveryColumnOnce) {
  Matrix m(1, 20);
  for (int j = 0; j < 20; ++j) m(0, j) = j;
  const auto parts = partition(DataMatrix(m), 4, PartitionScheme::shuffled(9));
  std::vector<double> seen;
  for (const auto& p : parts)
    for (int j = 0; j < p.samples(); ++j) seen.push_back(p.values()(0, j));
  std::sort(seen.begin(), seen.end());
  for (int j = 0; j < 20; ++j) EXPECT_EQ(seen[static_cast<std::size_t>(j)], j);
}

TEST(CovarianceTest, MatchesLoopAndPoolsToGlobal) {
  Rng rng(4);
  const DataMatrix data(gaussian_matrix(4, 30, rng));
  Matrix want = Matrix::Zero(4, 4);
  for (int n = 0; n < 30; ++n)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) want(a, b) += data.values()(a, n) * data.values()(b, n) / 30;
  EXPECT_LT((covariance(data).values() - want).norm(), 1e-13);

  const auto parts = partition(data, 3, PartitionScheme::with_sizes({5, 10, 15}));
  std::vector<CovarianceMatrix> covs;
  for (const auto& p : parts) covs.push_back(covariance(p));
  const auto pooled = pooled_covariance(covs);
  EXPECT_EQ(pooled.sample_count(), 30);
  EXPECT_LT((pooled.values() - want).norm(), 1e-13);
}

TEST(CovarianceTest, SinglePartPoolsExactly) {
  Rng rng(6);
  const auto c = covariance(DataMatrix(gaussian_matrix(3, 7, rng)));
  const std::vector<CovarianceMatrix> one{c};
  EXPECT_TRUE((pooled_covariance(one).values().array() == c.values().array()).all());
}

TEST(CovarianceTest, RejectsAsymmetric) {
  Matrix m = Matrix::Identity(2, 2);
  m(0, 1) = 1.0;
  EXPECT_EQ(code_of([&] { CovarianceMatrix(m, 1); }), ErrorCode::kInvalidArgument);
}

TEST(BinaryFormatTest, RoundTripIsBitExact) {
  Rng rng(8);
  const DataMatrix data(gaussian_matrix(3, 11, rng));
  const auto path = temp_path("rt.bin");
  write_binary(path, data);
  EXPECT_EQ(fs::file_size(path), 4u + 8u + 8u * 33u);
  const auto back = read_matrix(path);
  EXPECT_TRUE((back.values().array() == data.values().array()).all());
  std::ifstream in(path, std::ios::binary);
  char magic[4];
  in.read(magic, 4);
  EXPECT_EQ(std::string(magic, 4), "DPCA");
  fs::remove(path);
}

TEST(BinaryFormatTest, BadMagicAndTruncation) {
  const auto path = temp_path("bad.bin");
  {
    std::ofstream out(path, std::ios::binary);
    out << "XXXX12345678";
  }
  EXPECT_EQ(code_of([&] { read_binary(path); }), ErrorCode::kIoError);
  write_binary(path, DataMatrix(Matrix::Ones(2, 2)));
  fs::resize_file(path, fs::file_size(path) - 3);
  EXPECT_EQ(code_of([&] { read_binary(path); }), ErrorCode::kIoError);
  fs::remove(path);
  EXPECT_EQ(code_of([&] { read_binary(path); }), ErrorCode::kIoError);
}

TEST(CsvFormatTest, HeaderSkippedAndRoundTrip) {
  const auto path = temp_path("in.csv");
  {
    std::ofstream out(path);
    out << "s1,s2,s3\n1,2,3\n4,5.5,6\n";
  }
  const auto d = read_matrix(path);
  ASSERT_EQ(d.dim(), 2);
  ASSERT_EQ(d.samples(), 3);
  EXPECT_EQ(d.values()(1, 1), 5.5);
  write_csv(path, d);
  EXPECT_TRUE((read_csv(path).values().array() == d.values().array()).all());
  fs::remove(path);
}

TEST(CsvFormatTest, RaggedRowNamesTheLine) {
  const auto path = temp_path("ragged.csv");
  {
    std::ofstream out(path);
    out << "1,2\n3\n";
  }
  try {
    read_csv(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIoError);
    EXPECT_NE(std::string(e.what()).find("2"), std::string::npos);
  }
  fs::remove(path);
}

}  // namespace
}  // namespace sangernet
