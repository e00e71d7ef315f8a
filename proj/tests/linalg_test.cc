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

#include <gtest/gtest.h>

#include "oracles.h"
#include "sangernet/error.h"

namespace sangernet {
namespace {

TEST(RngTest, SameSeedAndStreamRepeat) {
  Rng a(42, 3), b(42, 3);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.normal(), b.normal());
}

TEST(RngTest, StreamsDiffer) {
  Rng a(42, kDataStream), b(42, kGraphStream);
  int equal = 0;
  for (int i = 0; i < 100; ++i) equal += a.uniform() == b.uniform();
  EXPECT_EQ(equal, 0);
}

TEST(QrTest, OrthonormalWithPositiveDiagonal) {
  Rng rng(1);
  const Matrix a = gaussian_matrix(7, 4, rng);
  const Matrix q = qr_orthonormalize(a);
  EXPECT_LT((q.transpose() * q - Matrix::Identity(4, 4)).norm(), 1e-13);
  const Matrix r = q.transpose() * a;
  for (int i = 0; i < 4; ++i) {
    EXPECT_GT(r(i, i), 0.0);
    for (int j = 0; j < i; ++j) EXPECT_NEAR(r(i, j), 0.0, 1e-12);
  }
  EXPECT_LT((q * r - a).norm(), 1e-12);
}

TEST(QrTest, RankDeficientThrows) {
  Matrix a(3, 2);
  a << 1, 2, 2, 4, 3, 6;
  try {
    qr_orthonormalize(a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateIterate);
  }
}

TEST(RandomOrthonormalTest, ColumnsAreOrthonormal) {
  Rng rng(5);
  const Matrix q = random_orthonormal(10, 3, rng);
  EXPECT_LT((q.transpose() * q - Matrix::Identity(3, 3)).norm(), 1e-13);
}

TEST(TopEigenvalueTest, MatchesJacobi) {
  const Matrix c = oracle::random_spd(6, 11);
  EXPECT_NEAR(top_eigenvalue(c), oracle::jacobi_eigen(c).first(0), 1e-10);
}

TEST(MaxAbsTest, Basic) {
  Matrix a(2, 2);
  a << 1, -5, 2, 3;
  EXPECT_EQ(max_abs(a), 5.0);
}

}  // namespace
}  // namespace sangernet
