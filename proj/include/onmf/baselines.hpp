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
// Lloyd k-means and spherical k-means reference baselines. Both share the
// EM-ONMF conventions: centroids initialized from random data columns,
// lowest-index tie-breaking, empty-cluster repair from the largest donor
// cluster, and the stop rule of two consecutive unchanged assignments.

#ifndef ONMF_BASELINES_HPP_
#define ONMF_BASELINES_HPP_

#include <chrono>
#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "onmf/em_onmf.hpp"
#include "onmf/errors.hpp"
#include "onmf/matrix.hpp"
#include "onmf/rng.hpp"
#include "onmf/types.hpp"

namespace onmf {

struct KmeansResult {
  Partition partition;
  Eigen::MatrixXd centroids;  // m x k
  RunTrace trace;
  std::vector<double> distortion_history;  // sum of squared distances
  long iterations = 0;
  bool converged = false;
};

inline KmeansResult kmeans(const DataMatrix& m, int k, const EmOptions& opts = {}) {
  const Index n = m.cols();
  if (k > n) throw InfeasibleError("k exceeds the number of columns");
  const auto start = std::chrono::steady_clock::now();
  Rng rng(opts.seed);
  std::vector<long> all(n);
  for (Index j = 0; j < n; ++j) all[j] = j;
  std::vector<long> picks = rng_sample_distinct(rng, all, static_cast<std::size_t>(k));
  Eigen::MatrixXd centroids(m.rows(), k);
  for (int c = 0; c < k; ++c) centroids.col(c) = m.column(picks[c]);

  const Eigen::VectorXd col_norms2 = m.column_squared_norms();
  KmeansResult out;
  Partition prev;
  int stable = 0;
  for (long it = 0; it < opts.max_iter; ++it) {
    // ||m_j - c||^2 = ||m_j||^2 - 2 m_j.c + ||c||^2; the first term is
    // constant per column and can be dropped from the argmin.
    Eigen::MatrixXd scores = m.apply_transposed_matrix(centroids);  // n x k
    Partition p;
    p.k = k;
    p.assignment.resize(n);
    Eigen::VectorXd cnorm2(k);
    for (int c = 0; c < k; ++c) cnorm2[c] = centroids.col(c).squaredNorm();
    for (Index j = 0; j < n; ++j) {
      int best = 0;
      double best_d = cnorm2[0] - 2.0 * scores(j, 0);
      for (int c = 1; c < k; ++c) {
        const double d = cnorm2[c] - 2.0 * scores(j, c);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      p.assignment[j] = best;
    }
    p = repair_empty_clusters(std::move(p), rng);
    // mean update
    centroids.setZero();
    std::vector<long> sizes(k, 0);
    for (Index j = 0; j < n; ++j) {
      const int c = p.assignment[j];
      ++sizes[c];
      m.for_each_in_column(j, [&](Index i, double v) { centroids(i, c) += v; });
    }
    for (int c = 0; c < k; ++c) centroids.col(c) /= static_cast<double>(sizes[c]);
    ++out.iterations;
    double distortion = 0.0;
    Eigen::MatrixXd scores2 = m.apply_transposed_matrix(centroids);
    for (Index j = 0; j < n; ++j) {
      const int c = p.assignment[j];
      distortion += col_norms2[j] - 2.0 * scores2(j, c) + centroids.col(c).squaredNorm();
    }
    out.distortion_history.push_back(distortion);
    TraceRow row;
    row.t = out.iterations;
    row.error = distortion;
    row.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
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
  return out;
}

struct SphericalKmeansResult {
  Partition partition;
  CentroidSet centroids;
  RunTrace trace;
  std::vector<double> cosine_history;  // sum of cosines, non-decreasing
  long iterations = 0;
  bool converged = false;
  bool zero_columns_flagged = false;   // zero columns pinned to cluster 0
  bool zero_centroid_flagged = false;  // a centroid update had a zero sum
};

inline SphericalKmeansResult spherical_kmeans(const DataMatrix& m, int k,
                                              const EmOptions& opts = {}) {
  const Index n = m.cols();
  if (k > n) throw InfeasibleError("k exceeds the number of columns");
  const auto start = std::chrono::steady_clock::now();
  Rng rng(opts.seed);
  const Eigen::VectorXd norms = m.column_squared_norms().cwiseSqrt();
  std::vector<long> nonzero;
  for (Index j = 0; j < n; ++j)
    if (norms[j] > 0.0) nonzero.push_back(j);
  if (static_cast<int>(nonzero.size()) < k)
    throw InfeasibleError("fewer nonzero columns than clusters");

  SphericalKmeansResult out;
  out.zero_columns_flagged = static_cast<Index>(nonzero.size()) < n;
  std::vector<long> picks = rng_sample_distinct(rng, nonzero, static_cast<std::size_t>(k));
  Eigen::MatrixXd centroids(m.rows(), k);
  for (int c = 0; c < k; ++c) centroids.col(c) = m.column(picks[c]) / norms[picks[c]];

  Partition prev;
  int stable = 0;
  for (long it = 0; it < opts.max_iter; ++it) {
    Eigen::MatrixXd scores = m.apply_transposed_matrix(centroids);  // n x k
    Partition p;
    p.k = k;
    p.assignment.resize(n);
    for (Index j = 0; j < n; ++j) {
      if (norms[j] == 0.0) {
        p.assignment[j] = 0;
        continue;
      }
      int best = 0;
      double best_score = scores(j, 0);
      for (int c = 1; c < k; ++c) {
        if (scores(j, c) > best_score) {
          best_score = scores(j, c);
          best = c;
        }
      }
      p.assignment[j] = best;
    }
    p = repair_empty_clusters(std::move(p), rng);
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(m.rows(), k);
    for (Index j = 0; j < n; ++j) {
      if (norms[j] == 0.0) continue;
      const int c = p.assignment[j];
      const double inv = 1.0 / norms[j];
      m.for_each_in_column(j, [&](Index i, double v) { sums(i, c) += v * inv; });
    }
    for (int c = 0; c < k; ++c) {
      const double norm = sums.col(c).norm();
      if (norm == 0.0) {
        out.zero_centroid_flagged = true;  // keep the previous direction
        continue;
      }
      centroids.col(c) = sums.col(c) / norm;
    }
    ++out.iterations;
    double cosine = 0.0;
    Eigen::MatrixXd scores2 = m.apply_transposed_matrix(centroids);
    for (Index j = 0; j < n; ++j)
      if (norms[j] > 0.0) cosine += scores2(j, p.assignment[j]) / norms[j];
    out.cosine_history.push_back(cosine);
    TraceRow row;
    row.t = out.iterations;
    row.error = cosine;
    row.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
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
  out.centroids.directions = centroids;
  return out;
}

}  // namespace onmf

#endif  // ONMF_BASELINES_HPP_
