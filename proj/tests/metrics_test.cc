// Copyright 2026 The onmfkit Authors.
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

#include "onmf/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "gtest/gtest.h"
#include "oracles.hpp"

namespace onmf {
namespace {

double BruteForceAccuracy(const Eigen::MatrixXd& confusion, long total) {
  const Index k = confusion.rows();
  std::vector<Index> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  double best = 0.0;
  do {
    double agree = 0.0;
    for (Index i = 0; i < k; ++i) agree += confusion(i, perm[i]);
    best = std::max(best, agree);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best / static_cast<double>(total);
}

TEST(Accuracy, PerfectPartition) {
  Partition p{{0, 1, 2, 0, 1, 2}, 3};
  std::vector<int> labels{0, 1, 2, 0, 1, 2};
  EXPECT_DOUBLE_EQ(accuracy(p, labels), 1.0);
}

TEST(Accuracy, RelabeledPartitionStillPerfect) {
  Partition p{{2, 0, 1, 2, 0, 1}, 3};
  std::vector<int> labels{0, 1, 2, 0, 1, 2};
  EXPECT_DOUBLE_EQ(accuracy(p, labels), 1.0);
}

TEST(Accuracy, WorkedConfusionExample) {
  // confusion [[3,1],[2,4]] over n = 10 -> (3+4)/10
  Partition p;
  p.k = 2;
  std::vector<int> labels;
  auto add = [&](int cluster, int label, int count) {
    for (int i = 0; i < count; ++i) {
      p.assignment.push_back(cluster);
      labels.push_back(label);
    }
  };
  add(0, 0, 3);
  add(0, 1, 1);
  add(1, 0, 2);
  add(1, 1, 4);
  EXPECT_DOUBLE_EQ(accuracy(p, labels), 0.7);
}

TEST(Accuracy, HungarianMatchesBruteForce) {
  Rng rng(55);
  for (int rep = 0; rep < 200; ++rep) {
    const int k = 2 + static_cast<int>(rng_below(rng, 5));  // up to 6
    Eigen::MatrixXd confusion(k, k);
    long total = 0;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        confusion(i, j) = static_cast<double>(rng_below(rng, 20));
        total += static_cast<long>(confusion(i, j));
      }
    if (total == 0) continue;
    const auto match = hungarian_max_assignment(confusion);
    double agree = 0.0;
    for (int i = 0; i < k; ++i) agree += confusion(i, match[i]);
    EXPECT_DOUBLE_EQ(agree / total, BruteForceAccuracy(confusion, total));
  }
}

TEST(Accuracy, InvariantUnderClusterRelabeling) {
  Rng rng(57);
  Partition p;
  p.k = 4;
  std::vector<int> labels;
  for (int j = 0; j < 40; ++j) {
    p.assignment.push_back(static_cast<int>(rng_below(rng, 4)));
    labels.push_back(static_cast<int>(rng_below(rng, 4)));
  }
  const double base = accuracy(p, labels);
  std::vector<int> relabel{2, 3, 0, 1};
  Partition q = p;
  for (auto& a : q.assignment) a = relabel[a];
  EXPECT_DOUBLE_EQ(accuracy(q, labels), base);
}

TEST(Accuracy, PaddedWhenClusterAndClassCountsDiffer) {
  Partition p{{0, 0, 0, 0}, 1};  // one cluster, two classes
  std::vector<int> labels{0, 0, 1, 1};
  EXPECT_DOUBLE_EQ(accuracy(p, labels), 0.5);
}

TEST(Accuracy, UnlabeledPointsSkipped) {
  Partition p{{0, 1, 0, 1}, 2};
  std::vector<int> labels{0, 1, -1, -1};
  EXPECT_DOUBLE_EQ(accuracy(p, labels), 1.0);
}

TEST(OrthogonalityResidual, IdentityRowsZero) {
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(3, 5);
  EXPECT_DOUBLE_EQ(orthogonality_residual(v), 0.0);
}

TEST(OrthogonalityResidual, DuplicatedUnitRow) {
  Eigen::MatrixXd v(2, 3);
  v.row(0) << 1, 0, 0;
  v.row(1) << 1, 0, 0;
  EXPECT_NEAR(orthogonality_residual(v), std::sqrt(2.0), 1e-15);
}

TEST(OrthogonalityResidual, RandomOrthonormalTiny) {
  Rng rng(59);
  Eigen::MatrixXd v = oracle::random_orthonormal_rows(rng, 4, 9);
  EXPECT_LE(orthogonality_residual(v), 1e-10);
}

TEST(NegativityResidual, NonnegativeZero) {
  Eigen::MatrixXd v = Eigen::MatrixXd::Ones(2, 4);
  EXPECT_DOUBLE_EQ(negativity_residual(v), 0.0);
}

TEST(NegativityResidual, HandComputed) {
  Eigen::MatrixXd v(2, 2);
  v << -1, 0, 0, 1;
  EXPECT_NEAR(negativity_residual(v), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(NegativityResidual, ScaleInvariant) {
  Rng rng(61);
  Eigen::MatrixXd v(3, 4);
  for (Index j = 0; j < 4; ++j)
    for (Index i = 0; i < 3; ++i) v(i, j) = 2.0 * rng_unit(rng) - 1.0;
  const double base = negativity_residual(v);
  EXPECT_NEAR(negativity_residual(7.5 * v), base, 1e-14);
}

TEST(ReconstructionError, ExactFactorizationZero) {
  Rng rng(63);
  Eigen::MatrixXd u = oracle::random_nonneg(rng, 4, 2);
  Eigen::MatrixXd v = oracle::random_nonneg(rng, 2, 5);
  auto m = DataMatrix::Dense(u * v);
  EXPECT_NEAR(reconstruction_error(m, u, v), 0.0, 1e-12);
}

TEST(ReconstructionError, ZeroFactorGivesMatrixNorm) {
  Rng rng(65);
  Eigen::MatrixXd md = oracle::random_nonneg(rng, 4, 5);
  auto m = DataMatrix::Dense(md);
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(4, 2);
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(2, 5);
  EXPECT_NEAR(reconstruction_error(m, u, v), md.norm(), 1e-12);
}

TEST(ReconstructionError, MatchesNaiveTripleLoop) {
  Rng rng(67);
  Eigen::MatrixXd md = oracle::random_nonneg(rng, 5, 6);
  Eigen::MatrixXd u = oracle::random_nonneg(rng, 5, 3);
  Eigen::MatrixXd v = oracle::random_nonneg(rng, 3, 6);
  double naive = 0.0;
  for (Index i = 0; i < 5; ++i)
    for (Index j = 0; j < 6; ++j) {
      double uv = 0.0;
      for (Index c = 0; c < 3; ++c) uv += u(i, c) * v(c, j);
      naive += (md(i, j) - uv) * (md(i, j) - uv);
    }
  EXPECT_NEAR(reconstruction_error(DataMatrix::Dense(md), u, v), std::sqrt(naive), 1e-10);
}

}  // namespace
}  // namespace onmf
