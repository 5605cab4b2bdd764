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
//
// EM-style alternating solver for orthogonal NMF. The problem is equivalent
// to a norm-weighted variant of spherical k-means: assign each column to the
// direction maximizing its inner product, then refit each direction as the
// nonnegative dominant left singular vector of its cluster's submatrix. The
// factorization objective equals ||M||_F^2 minus the sum of the clusters'
// squared top singular values.

#ifndef ONMF_EM_ONMF_HPP_
#define ONMF_EM_ONMF_HPP_

#include <chrono>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "onmf/errors.hpp"
#include "onmf/linalg.hpp"
#include "onmf/matrix.hpp"
#include "onmf/rng.hpp"
#include "onmf/types.hpp"

namespace onmf {

// Each column goes to the centroid with the largest inner product, ties to
// the lowest cluster index. Zero columns tie everywhere at 0 and land in
// cluster 0.
inline Partition assign_clusters(const DataMatrix& m, const CentroidSet& centroids) {
  const Index n = m.cols();
  const Index k = centroids.k();
  Partition p;
  p.k = static_cast<int>(k);
  p.assignment.resize(n);
  Eigen::MatrixXd scores = m.apply_transposed_matrix(centroids.directions);  // n x k
  for (Index j = 0; j < n; ++j) {
    int best = 0;
    double best_score = scores(j, 0);
    for (Index c = 1; c < k; ++c) {
      if (scores(j, c) > best_score) {
        best_score = scores(j, c);
        best = static_cast<int>(c);
      }
    }
    p.assignment[j] = best;
  }
  return p;
}

// Moves one random point into each empty cluster. The donor pool is the
// largest cluster that still has at least two members (lowest index on a
// size tie); the point is drawn uniformly from it.
inline Partition repair_empty_clusters(Partition p, Rng& rng) {
  const int k = p.k;
  if (p.size() < k) throw InfeasibleError("fewer points than clusters");
  std::vector<std::vector<Index>> members(k);
  for (std::size_t j = 0; j < p.assignment.size(); ++j)
    members[p.assignment[j]].push_back(static_cast<Index>(j));
  for (int c = 0; c < k; ++c) {
    if (!members[c].empty()) continue;
    int donor = -1;
    for (int d = 0; d < k; ++d)
      if (members[d].size() >= 2 && (donor < 0 || members[d].size() > members[donor].size()))
        donor = d;
    if (donor < 0) throw InfeasibleError("no cluster can donate a point");
    const std::size_t pick = rng_below(rng, members[donor].size());
    const Index moved = members[donor][pick];
    members[donor].erase(members[donor].begin() + static_cast<std::ptrdiff_t>(pick));
    members[c].push_back(moved);
    p.assignment[moved] = c;
  }
  return p;
}

// Refits every centroid as the nonnegative dominant left singular vector of
// its cluster submatrix. An all-zero cluster falls back to e1 and raises the
// fallback flag.
inline CentroidSet update_centroids(const DataMatrix& m, const Partition& p) {
  CentroidSet out;
  out.directions.resize(m.rows(), p.k);
  const auto clusters = p.clusters();
  for (int c = 0; c < p.k; ++c) {
    ColumnSubsetView sub(m, clusters[c]);
    if (clusters[c].empty() || sub.squared_frobenius_norm() == 0.0) {
      out.directions.col(c).setZero();
      out.directions(0, c) = 1.0;
      out.zero_cluster_fallback = true;
      continue;
    }
    out.directions.col(c) = nonneg_dominant_left_vector(sub);
  }
  return out;
}

// Optimal coefficients given directions and partition: v_{ij} = m_j^T u_i
// for j in cluster i and zero elsewhere, so rows have disjoint supports.
inline Eigen::MatrixXd optimal_coefficients(const DataMatrix& m, const CentroidSet& centroids,
                                            const Partition& p) {
  Eigen::MatrixXd scores = m.apply_transposed_matrix(centroids.directions);  // n x k
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(p.k, m.cols());
  for (Index j = 0; j < m.cols(); ++j) v(p.assignment[j], j) = scores(j, p.assignment[j]);
  return v;
}

// ||M||_F^2 - sum_i sigma1^2(M(:, cluster_i)); equals ||M - UV||_F^2 for the
// factorization built from update_centroids + optimal_coefficients.
inline double onmf_objective(const DataMatrix& m, const Partition& p) {
  double total = m.squared_frobenius_norm();
  const auto clusters = p.clusters();
  for (int c = 0; c < p.k; ++c) {
    if (clusters[c].empty()) continue;
    ColumnSubsetView sub(m, clusters[c]);
    if (sub.squared_frobenius_norm() == 0.0) continue;
    auto t = dominant_singular_triplet(sub);
    total -= t.sigma * t.sigma;
  }
  return total;
}

struct EmOptions {
  long max_iter = 500;
  std::uint64_t seed = 1;
};

struct EmResult {
  Factorization factorization;
  Partition partition;
  CentroidSet centroids;
  RunTrace trace;
  std::vector<double> objective_history;
  long iterations = 0;
  bool converged = false;
};

namespace detail {

inline double explicit_objective(const DataMatrix& m, const Eigen::MatrixXd& u,
                                 const Eigen::MatrixXd& v) {
  double total = 0.0;
  for (Index j = 0; j < m.cols(); ++j) {
    Eigen::VectorXd r = -(u * v.col(j));
    m.for_each_in_column(j, [&](Index i, double val) { r[i] += val; });
    total += r.squaredNorm();
  }
  return total;
}

inline EmResult em_onmf_loop(const DataMatrix& m, CentroidSet centroids, Rng& rng,
                             const EmOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  EmResult out;
  Partition prev;
  int stable = 0;
  const double m_norm2 = m.squared_frobenius_norm();
  for (long it = 0; it < opts.max_iter; ++it) {
    Partition p = repair_empty_clusters(assign_clusters(m, centroids), rng);
    centroids = update_centroids(m, p);
    ++out.iterations;
    // sum ||M_i^T u_i||^2 equals the optimal-coefficient objective term
    Eigen::MatrixXd scores = m.apply_transposed_matrix(centroids.directions);
    double captured = 0.0;
    for (Index j = 0; j < m.cols(); ++j) {
      const double s = scores(j, p.assignment[j]);
      captured += s * s;
    }
    const double objective = m_norm2 - captured;
    out.objective_history.push_back(objective);
    TraceRow row;
    row.t = out.iterations;
    row.error = std::sqrt(std::max(0.0, objective));
    row.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    out.trace.push_back(row);
    if (it > 0 && p == prev) {
      ++stable;
      if (stable >= 2) {
        out.converged = true;
        out.partition = std::move(p);
        break;
      }
    } else {
      stable = 0;
    }
    prev = p;
    out.partition = std::move(p);
  }
  out.centroids = centroids;
  out.factorization.U = centroids.directions;
  out.factorization.V = optimal_coefficients(m, centroids, out.partition);
  out.factorization.objective = explicit_objective(m, out.factorization.U, out.factorization.V);
  return out;
}

}  // namespace detail

// Runs the alternating loop from the given initial centroids until the
// assignment is unchanged for two consecutive iterations or the cap hits.
inline EmResult em_onmf(const DataMatrix& m, int k, CentroidSet init,
                        const EmOptions& opts = {}) {
  if (k > m.cols()) throw InfeasibleError("k exceeds the number of columns");
  if (init.directions.cols() != k || init.directions.rows() != m.rows())
    throw DimensionMismatchError("initial centroid shape mismatch");
  Rng rng(opts.seed);
  return detail::em_onmf_loop(m, std::move(init), rng, opts);
}

// Seeded-random initialization: centroids are k distinct nonzero data
// columns, normalized.
inline EmResult em_onmf(const DataMatrix& m, int k, const EmOptions& opts = {}) {
  if (k > m.cols()) throw InfeasibleError("k exceeds the number of columns");
  Rng rng(opts.seed);
  std::vector<long> nonzero;
  Eigen::VectorXd norms = m.column_squared_norms();
  for (Index j = 0; j < m.cols(); ++j)
    if (norms[j] > 0.0) nonzero.push_back(j);
  if (static_cast<int>(nonzero.size()) < k)
    throw InfeasibleError("fewer nonzero columns than clusters");
  std::vector<long> picks = rng_sample_distinct(rng, nonzero, static_cast<std::size_t>(k));
  CentroidSet init;
  init.directions.resize(m.rows(), k);
  for (int c = 0; c < k; ++c)
    init.directions.col(c) = m.column(picks[c]) / std::sqrt(norms[picks[c]]);
  return detail::em_onmf_loop(m, std::move(init), rng, opts);
}

// Returns a copy of V with every row scaled to unit norm (zero rows kept);
// for EM-ONMF output the result satisfies V V^T = I up to rounding.
inline Eigen::MatrixXd row_normalized(const Eigen::MatrixXd& v) {
  Eigen::MatrixXd out = v;
  for (Index i = 0; i < out.rows(); ++i) {
    const double norm = out.row(i).norm();
    if (norm > 0.0) out.row(i) /= norm;
  }
  return out;
}

}  // namespace onmf

#endif  // ONMF_EM_ONMF_HPP_
