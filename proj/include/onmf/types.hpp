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

#ifndef ONMF_TYPES_HPP_
#define ONMF_TYPES_HPP_

#include <vector>

#include <Eigen/Dense>

#include "onmf/matrix.hpp"

namespace onmf {

// Assignment of the n data columns to k clusters. Cluster ids are 0-based in
// memory; file writers emit them 1-based.
struct Partition {
  std::vector<int> assignment;
  int k = 0;

  Index size() const { return static_cast<Index>(assignment.size()); }

  std::vector<std::vector<Index>> clusters() const {
    std::vector<std::vector<Index>> out(k);
    for (std::size_t j = 0; j < assignment.size(); ++j) out[assignment[j]].push_back(static_cast<Index>(j));
    return out;
  }

  bool operator==(const Partition& other) const = default;
};

// Unit-norm nonnegative cluster directions, one per column.
struct CentroidSet {
  Eigen::MatrixXd directions;  // m x k
  // True when some all-zero cluster forced a canonical-basis fallback.
  bool zero_cluster_fallback = false;

  Index k() const { return directions.cols(); }
};

// Factor pair with its squared Frobenius objective.
struct Factorization {
  Eigen::MatrixXd U;  // m x k, nonnegative
  Eigen::MatrixXd V;  // k x n, nonnegative
  double objective = 0.0;  // ||M - UV||_F^2
};

// One row per iteration of a solver run.
struct TraceRow {
  long t = 0;
  double error = 0.0;          // ||M - UV||_F (clustering objective for the baselines)
  double neg_residual = 0.0;   // ||min(V,0)||_F / ||V||_F
  double orth_residual = 0.0;  // ||V V^T - I||_F
  double beta = 0.0;           // accepted line-search step, 0 when not applicable
  double rho = 0.0;            // quadratic penalty, 0 when not applicable
  double elapsed_ms = 0.0;
};

using RunTrace = std::vector<TraceRow>;

// Data matrix plus per-column class labels (0-based in memory; label < 0
// means unlabeled, e.g. background pixels).
struct LabeledDataset {
  DataMatrix matrix;
  std::vector<int> labels;
  int num_classes = 0;
};

}  // namespace onmf

#endif  // ONMF_TYPES_HPP_
