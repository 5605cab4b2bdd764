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

#ifndef ONMF_METRICS_HPP_
#define ONMF_METRICS_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "onmf/errors.hpp"
#include "onmf/matrix.hpp"
#include "onmf/types.hpp"

namespace onmf {

// Maximum-weight perfect matching on a square score matrix via the Hungarian
// algorithm with potentials (O(k^3)). Returns column_of_row.
inline std::vector<Index> hungarian_max_assignment(const Eigen::MatrixXd& scores) {
  const Index n = scores.rows();
  // Minimize the negated scores. 1-based temporaries, classic potentials.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<Index> way(n + 1, 0), matched_row(n + 1, 0);
  for (Index i = 1; i <= n; ++i) {
    matched_row[0] = i;
    Index j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const Index i0 = matched_row[j0];
      double delta = inf;
      Index j1 = 0;
      for (Index j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = -scores(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (Index j = 0; j <= n; ++j) {
        if (used[j]) {
          u[matched_row[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (matched_row[j0] != 0);
    do {
      const Index j1 = way[j0];
      matched_row[j0] = matched_row[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<Index> col_of_row(n, -1);
  for (Index j = 1; j <= n; ++j)
    if (matched_row[j] > 0) col_of_row[matched_row[j] - 1] = j - 1;
  return col_of_row;
}

// Confusion counts between clusters (rows) and classes (columns), padded to
// a square matrix with zeros when the counts differ. Labels below zero are
// treated as unlabeled and skipped; `total` reports the labeled count.
inline Eigen::MatrixXd confusion_matrix(const std::vector<int>& assignment,
                                        const std::vector<int>& labels, long* total = nullptr) {
  if (assignment.size() != labels.size())
    throw DimensionMismatchError("assignment/label length mismatch");
  int k_clusters = 0, k_classes = 0;
  for (int a : assignment) k_clusters = std::max(k_clusters, a + 1);
  for (int l : labels) k_classes = std::max(k_classes, l + 1);
  const int k = std::max(k_clusters, k_classes);
  Eigen::MatrixXd confusion = Eigen::MatrixXd::Zero(k, k);
  long count = 0;
  for (std::size_t j = 0; j < labels.size(); ++j) {
    if (labels[j] < 0) continue;
    confusion(assignment[j], labels[j]) += 1.0;
    ++count;
  }
  if (total) *total = count;
  return confusion;
}

// Permutation-maximized clustering accuracy in [0, 1]: the best fraction of
// agreeing points over all cluster-to-class relabelings, computed exactly by
// optimal assignment on the confusion matrix.
inline double accuracy(const Partition& p, const std::vector<int>& labels) {
  long total = 0;
  Eigen::MatrixXd confusion = confusion_matrix(p.assignment, labels, &total);
  if (total == 0) return 0.0;
  const auto match = hungarian_max_assignment(confusion);
  double agree = 0.0;
  for (Index i = 0; i < confusion.rows(); ++i) agree += confusion(i, match[i]);
  return agree / static_cast<double>(total);
}

// ||V V^T - I||_F, the diagnostic for row orthonormality.
inline double orthogonality_residual(const Eigen::MatrixXd& v) {
  Eigen::MatrixXd g = v * v.transpose();
  g.diagonal().array() -= 1.0;
  return g.norm();
}

// ||min(V, 0)||_F / ||V||_F; zero for nonnegative V.
inline double negativity_residual(const Eigen::MatrixXd& v) {
  const double norm = v.norm();
  if (norm == 0.0) return 0.0;
  return v.cwiseMin(0.0).norm() / norm;
}

// ||M - UV||_F (the norm, not its square).
inline double reconstruction_error(const DataMatrix& m, const Eigen::MatrixXd& u,
                                   const Eigen::MatrixXd& v) {
  double total = 0.0;
  for (Index j = 0; j < m.cols(); ++j) {
    Eigen::VectorXd r = -(u * v.col(j));
    m.for_each_in_column(j, [&](Index i, double val) { r[i] += val; });
    total += r.squaredNorm();
  }
  return std::sqrt(total);
}

}  // namespace onmf

#endif  // ONMF_METRICS_HPP_
