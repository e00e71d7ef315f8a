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

#include "sangernet/distributed.h"

#include <algorithm>
#include <numeric>

#include <gtest/gtest.h>

#include "oracles.h"
#include "sangernet/error.h"
#include "sangernet/metrics.h"

namespace sangernet {
namespace {

Problem small_problem(int m, const Graph& g, int k, std::uint64_t seed, int d = 6) {
  const auto data =
      center(generate_gaussian(d, 400 * m, SpectrumSpec::geometric(d, 0.6), seed));
  const auto parts = partition(data, m, PartitionScheme::equal());
  return make_problem(parts, g, k, seed);
}

bool bit_equal(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
}

TEST(DsaStepTest, SingleNodeIsOneGhaStep) {
  const Problem p = small_problem(1, Graph(1), 3, 2);
  NetworkState s = NetworkState::create(p.local, p.mixing, p.init);
  const Matrix& c = p.local[0].values();
  Matrix x = p.init;
  for (int t = 0; t < 50; ++t) {
    s = dsa_step(s, 0.1);
    x = x + 0.1 * sanger_direction(c, x);
    ASSERT_TRUE(bit_equal(s.estimates[0], x));
  }
  EXPECT_EQ(s.iteration, 50);
  EXPECT_EQ(s.comm_units, 50.0);
}

TEST(DsaStepTest, IdenticalNodesStayIdentical) {
  const Problem p = small_problem(1, Graph(1), 2, 4);
  const std::vector<CovarianceMatrix> covs(5, p.local[0]);
  NetworkState s = NetworkState::create(covs, metropolis_weights(erdos_renyi(5, 0.5, 1)), p.init);
  for (int t = 0; t < 100; ++t) s = dsa_step(s, 0.05);
  for (int i = 1; i < 5; ++i) {
    EXPECT_LT((s.estimates[static_cast<std::size_t>(i)] - s.estimates[0]).norm(), 1e-13);
  }
}

TEST(DsaStepTest, NodeOrderDoesNotMatter) {
  const Problem p = small_problem(6, erdos_renyi(6, 0.5, 3), 3, 3);
  NetworkState s = NetworkState::create(p.local, p.mixing, p.init);
  for (int t = 0; t < 5; ++t) s = dsa_step(s, 0.1);
  std::vector<int> order(6);
  std::iota(order.begin(), order.end(), 0);
  const NetworkState ref = dsa_step(s, 0.1, order);
  Rng rng(1);
  for (int n = 0; n < 10; ++n) {
    std::shuffle(order.begin(), order.end(), rng.engine());
    const NetworkState other = dsa_step(s, 0.1, order);
    for (std::size_t i = 0; i < 6; ++i) {
      EXPECT_TRUE(bit_equal(other.estimates[i], ref.estimates[i]));
    }
  }
  std::vector<int> bad{0, 0, 1, 2, 3, 4};
  EXPECT_THROW(dsa_step(s, 0.1, bad), Error);
}

TEST(DsaStepTest, SynchronousCombineMatchesMatrixForm) {
  const Problem p = small_problem(4, cycle(4), 2, 5);
  NetworkState s = NetworkState::create(p.local, p.mixing, p.init);
  s = dsa_step(s, 0.1);
  const NetworkState next = dsa_step(s, 0.1);
  const Matrix& w = p.mixing.weights();
  for (int i = 0; i < 4; ++i) {
    Matrix want = Matrix::Zero(6, 2);
    for (int j = 0; j < 4; ++j) want += w(i, j) * s.estimates[static_cast<std::size_t>(j)];
    want += 0.1 * oracle::sanger(p.local[static_cast<std::size_t>(i)].values(),
                                 s.estimates[static_cast<std::size_t>(i)]);
    EXPECT_LT((next.estimates[static_cast<std::size_t>(i)] - want).norm(), 1e-13);
  }
}

TEST(DsaStepTest, ShapeMismatchIsStateError) {
  const Problem p = small_problem(3, cycle(3), 2, 6);
  NetworkState s = NetworkState::create(p.local, p.mixing, p.init);
  s.estimates[1] = Matrix::Zero(6, 3);
  try {
    dsa_step(s, 0.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kStateError);
  }
}

TEST(DpgdStepTest, OutputsAreOrthonormal) {
  const Problem p = small_problem(5, star(5), 3, 7);
  NetworkState s = NetworkState::create(p.local, p.mixing, p.init);
  for (int t = 0; t < 30; ++t) {
    s = dpgd_step(s, 0.1);
    for (const auto& x : s.estimates) {
      EXPECT_LT((x.transpose() * x - Matrix::Identity(3, 3)).norm(), 1e-10);
    }
  }
  EXPECT_EQ(s.comm_units, 30.0);
}

TEST(DpgdStepTest, SingleNodeFindsTopSubspace) {
  const Matrix c = Vector(Eigen::Vector3d(3, 2, 1)).asDiagonal();
  const std::vector<CovarianceMatrix> covs{CovarianceMatrix(c, 1)};
  Rng rng(3);
  NetworkState s = NetworkState::create(covs, MixingMatrix(Matrix::Ones(1, 1)),
                                        random_orthonormal(3, 2, rng));
  for (int t = 0; t < 2000; ++t) s = dpgd_step(s, 0.05);
  EXPECT_LT(subspace_distance(s.estimates[0], Matrix::Identity(3, 2)), 1e-8);
}

TEST(AverageViewTest, Definitions) {
  const Problem p = small_problem(2, complete(2), 2, 8);
  NetworkState s = NetworkState::create(p.local, p.mixing, p.init);
  AverageView v = average_view(s);
  EXPECT_LT(v.h.norm(), 1e-15);
  EXPECT_LT((v.xbar - p.init).norm(), 1e-15);
  s.estimates[1] = -s.estimates[0];
  v = average_view(s);
  EXPECT_EQ(v.xbar.norm(), 0.0);
}

TEST(AverageViewTest, HdevBoundOnRandomStates) {
  Rng rng(11);
  for (int n = 0; n < 30; ++n) {
    const Problem p = small_problem(4, erdos_renyi(4, 0.7, n), 3, static_cast<std::uint64_t>(n));
    NetworkState s = NetworkState::create(p.local, p.mixing, p.init);
    for (auto& x : s.estimates) x = p.init + 0.3 * gaussian_matrix(6, 3, rng);
    const AverageView v = average_view(s);
    Matrix mean = Matrix::Zero(6, 3);
    for (const auto& x : s.estimates) mean += x / 4.0;
    EXPECT_LT((v.xbar - mean).cwiseAbs().maxCoeff(), 1e-14);
    double lmax = 0.0;
    for (const auto& c : p.local) lmax = std::max(lmax, oracle::jacobi_eigen(c.values()).first(0));
    for (int k = 0; k < 3; ++k) {
      double dev = 0.0;
      for (const auto& x : s.estimates) dev = std::max(dev, (x.col(k) - v.xbar.col(k)).norm());
      EXPECT_LE(v.h.col(k).norm(), 3.0 * (k + 3) * lmax * dev * (1 + 1e-9));
    }
  }
}

TEST(MakeProblemTest, ScalesUnequalPartsToMeanGlobal) {
  const auto data = center(generate_gaussian(4, 600, SpectrumSpec::geometric(4, 0.5), 1));
  const auto parts = partition(data, 3, PartitionScheme::with_sizes({100, 200, 300}));
  const Problem p = make_problem(parts, cycle(3), 2, 1);
  Matrix mean = Matrix::Zero(4, 4);
  for (const auto& c : p.local) mean += c.values() / 3.0;
  EXPECT_LT((mean - p.global.values()).norm(), 1e-13);
  EXPECT_LT((p.global.values() - covariance(data).values()).norm(), 1e-13);
  EXPECT_LT((p.init.transpose() * p.init - Matrix::Identity(2, 2)).norm(), 1e-13);
  EXPECT_THROW(make_problem(parts, cycle(4), 2, 1), Error);
}

TEST(DsaRunTest, DeterministicAndWellFormed) {
  const auto data = center(generate_gaussian(6, 2000, SpectrumSpec::geometric(6, 0.6), 3));
  const auto parts = partition(data, 5, PartitionScheme::equal());
  const Graph g = erdos_renyi(5, 0.5, 3);
  const auto a = dsa_run(parts, g, 2, 0.1, 300, 3);
  const auto b = dsa_run(parts, g, 2, 0.1, 300, 3);
  ASSERT_EQ(a.trajectory.rows.size(), 301u);
  EXPECT_TRUE(a.trajectory.well_formed());
  for (std::size_t r = 0; r < a.trajectory.rows.size(); ++r) {
    EXPECT_EQ(a.trajectory.rows[r].error, b.trajectory.rows[r].error);
    EXPECT_EQ(a.trajectory.rows[r].comm_units, static_cast<double>(r));
  }
  EXPECT_LT(a.trajectory.rows.back().error, a.trajectory.rows.front().error);
}

TEST(DsaRunTest, SingleNodeMatchesCentralGha) {
  const Problem p = small_problem(1, Graph(1), 3, 9);
  RunOptions o;
  o.alpha = 0.1;
  o.iterations = 1000;
  const auto a = dsa_run(p, o).trajectory.rows;
  const auto b = gha_central_run(p, o).trajectory.rows;
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t r = 0; r < a.size(); ++r) EXPECT_EQ(a[r].error, b[r].error);
}

TEST(DsaRunTest, NormsStayBelowSqrt3AtTheBound) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Problem p = small_problem(6, erdos_renyi(6, 0.5, seed), 3, seed);
    RunOptions o;
    o.alpha = step_size_bound(p.truth.values(0), 3, p.mixing.min_self_weight());
    o.iterations = 3000;
    const auto r = dsa_run(p, o);
    EXPECT_EQ(r.flags & (kFlagNormBound | kFlagStepAboveBound), 0u);
  }
}

TEST(DsaRunTest, FlagsLargeStepOnFirstRow) {
  const Problem p = small_problem(4, cycle(4), 2, 2);
  RunOptions o;
  o.alpha = 10.0;
  o.iterations = 5;
  const auto r = dsa_run(p, o);
  EXPECT_TRUE(r.trajectory.rows.front().flags & kFlagStepAboveBound);
}

TEST(DsaRunTest, CommBudgetStopsTheRun) {
  const Problem p = small_problem(4, cycle(4), 2, 2);
  RunOptions o;
  o.iterations = 1000;
  o.comm_budget = 25;
  EXPECT_EQ(dsa_run(p, o).trajectory.rows.back().comm_units, 25.0);
}

TEST(DsaRunTest, CollaborationBeatsLocalOnly) {
  const Problem p = small_problem(8, erdos_renyi(8, 0.5, 1), 2, 1);
  RunOptions o;
  o.alpha = 0.2;
  o.iterations = 3000;
  const double dsa = dsa_run(p, o).trajectory.rows.back().error;
  const double local = gha_local_only_run(p, o).trajectory.rows.back().error;
  EXPECT_LT(10.0 * dsa, local);
}

TEST(SeqDistPmTest, CompleteGraphOneRoundMatchesDeflatedPowerMethod) {
  const Problem p = small_problem(5, complete(5), 3, 12);
  SeqDistPmOptions o;
  o.consensus_rounds = 1;
  o.outer_iters = 60;
  o.keep_snapshots = true;
  o.snapshot_stride = 0;
  const auto r = seqdistpm_run(p, o);
  const Matrix want = oracle::deflated_power_method(p.global.values(), p.init, 60);
  const Matrix& got = r.snapshots.back().estimates[2];
  for (int k = 0; k < 3; ++k) {
    EXPECT_NEAR(std::abs(got.col(k).dot(want.col(k))), 1.0, 1e-10) << k;
  }
}

TEST(SeqDistPmTest, CommAccountingAndPhases) {
  const Problem p = small_problem(4, cycle(4), 3, 13);
  SeqDistPmOptions o;
  o.consensus_rounds = 50;
  o.outer_iters = 10;
  const auto r = seqdistpm_run(p, o);
  ASSERT_EQ(r.trajectory.rows.size(), 31u);
  ASSERT_EQ(r.phase.size(), 31u);
  EXPECT_DOUBLE_EQ(r.trajectory.rows.back().comm_units, 30 * 50.0 / 3.0);
  EXPECT_EQ(r.phase[10], 0);
  EXPECT_EQ(r.phase[11], 1);
  EXPECT_TRUE(r.trajectory.well_formed());
  // Columns above the current phase are still the initial ones, so the
  // error stays high early on.
  EXPECT_GT(r.trajectory.rows[10].error, 0.3);
}

TEST(SeqDistPmTest, Guards) {
  const Problem p = small_problem(4, cycle(4), 2, 14);
  SeqDistPmOptions o;
  o.consensus_rounds = 0;
  EXPECT_THROW(seqdistpm_run(p, o), Error);
  o.consensus_rounds = 1 << 30;
  o.outer_iters = std::int64_t{1} << 40;
  EXPECT_THROW(seqdistpm_run(p, o), Error);
}

TEST(NetworkRunTest, NonContractingMixingRefused) {
  const Problem base = small_problem(2, complete(2), 1, 15);
  Problem p{base.local, base.global, MixingMatrix(Matrix::Identity(2, 2)), base.truth, base.init};
  try {
    dsa_run(p, RunOptions{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDisconnectedGraph);
  }
  EXPECT_THROW(seqdistpm_run(p, SeqDistPmOptions{}), Error);
}

TEST(BaselineTest, OrthogonalIterationAndModifiedGhaConverge) {
  const Problem p = small_problem(3, cycle(3), 2, 16);
  RunOptions o;
  o.alpha = 0.5;
  o.iterations = 2000;
  EXPECT_LT(oi_run(p, o).trajectory.rows.back().error, 1e-12);
  EXPECT_LT(modified_gha_central_run(p, o).trajectory.rows.back().error, 1e-10);
}

}  // namespace
}  // namespace sangernet
