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

#ifndef ONMF_MATRIX_HPP_
#define ONMF_MATRIX_HPP_

#include <algorithm>
#include <concepts>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "onmf/errors.hpp"

namespace onmf {

using Index = Eigen::Index;

// Nonnegative data matrix whose columns are the data points. Stored either
// dense (column-major) or compressed-sparse-column. Every kernel below walks
// columns in ascending order and, within a column, rows in ascending order,
// so the two storages produce bit-identical results on the same logical
// matrix: the entries a dense walk visits and a sparse walk skips are exact
// zeros, and adding x*0.0 to an IEEE accumulator is the identity.
class DataMatrix {
 public:
  DataMatrix() = default;

  static DataMatrix Dense(Eigen::MatrixXd values) {
    for (Index j = 0; j < values.cols(); ++j)
      for (Index i = 0; i < values.rows(); ++i)
        if (values(i, j) < 0.0)
          throw NegativeValueError("negative entry at (" + std::to_string(i) + "," +
                                   std::to_string(j) + ")");
    DataMatrix m;
    m.rows_ = values.rows();
    m.cols_ = values.cols();
    m.dense_ = std::move(values);
    m.sparse_ = false;
    return m;
  }

  static DataMatrix Sparse(Index rows, Index cols, std::vector<Index> col_ptr,
                           std::vector<Index> row_idx, std::vector<double> values) {
    if (col_ptr.size() != static_cast<std::size_t>(cols) + 1 || col_ptr.front() != 0 ||
        col_ptr.back() != static_cast<Index>(values.size()) || row_idx.size() != values.size())
      throw DimensionMismatchError("inconsistent CSC arrays");
    for (Index j = 0; j < cols; ++j) {
      if (col_ptr[j + 1] < col_ptr[j]) throw DimensionMismatchError("column pointers not monotone");
      for (Index p = col_ptr[j]; p < col_ptr[j + 1]; ++p) {
        if (row_idx[p] < 0 || row_idx[p] >= rows)
          throw DimensionMismatchError("row index out of range");
        if (p > col_ptr[j] && row_idx[p] <= row_idx[p - 1])
          throw DimensionMismatchError("row indices not strictly increasing within a column");
        if (values[p] < 0.0) throw NegativeValueError("negative entry in sparse matrix");
      }
    }
    DataMatrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.col_ptr_ = std::move(col_ptr);
    m.row_idx_ = std::move(row_idx);
    m.values_ = std::move(values);
    m.sparse_ = true;
    return m;
  }

  // Triplets may arrive in any order; duplicates are summed.
  static DataMatrix FromTriplets(Index rows, Index cols,
                                 std::vector<std::tuple<Index, Index, double>> triplets) {
    for (const auto& [i, j, v] : triplets)
      if (i < 0 || i >= rows || j < 0 || j >= cols)
        throw DimensionMismatchError("triplet index out of range");
    std::sort(triplets.begin(), triplets.end(), [](const auto& a, const auto& b) {
      if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
      return std::get<0>(a) < std::get<0>(b);
    });
    std::vector<Index> ptr(cols + 1, 0);
    std::vector<Index> row_idx;
    std::vector<double> values;
    row_idx.reserve(triplets.size());
    values.reserve(triplets.size());
    Index last_col = -1, last_row = -1;
    for (const auto& [i, j, v] : triplets) {
      if (j == last_col && i == last_row) {
        values.back() += v;
      } else {
        row_idx.push_back(i);
        values.push_back(v);
        last_col = j;
        last_row = i;
      }
      ptr[j + 1] = static_cast<Index>(row_idx.size());
    }
    for (Index j = 0; j < cols; ++j) ptr[j + 1] = std::max(ptr[j + 1], ptr[j]);
    return Sparse(rows, cols, std::move(ptr), std::move(row_idx), std::move(values));
  }

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  bool is_sparse() const { return sparse_; }
  Index nonzeros() const {
    if (sparse_) return static_cast<Index>(values_.size());
    Index nnz = 0;
    for (Index j = 0; j < cols_; ++j)
      for (Index i = 0; i < rows_; ++i)
        if (dense_(i, j) != 0.0) ++nnz;
    return nnz;
  }

  double coeff(Index i, Index j) const {
    if (!sparse_) return dense_(i, j);
    for (Index p = col_ptr_[j]; p < col_ptr_[j + 1]; ++p)
      if (row_idx_[p] == i) return values_[p];
    return 0.0;
  }

  // Visits stored entries of column j as fn(row, value), rows ascending.
  template <class Fn>
  void for_each_in_column(Index j, Fn&& fn) const {
    if (sparse_) {
      for (Index p = col_ptr_[j]; p < col_ptr_[j + 1]; ++p) fn(row_idx_[p], values_[p]);
    } else {
      for (Index i = 0; i < rows_; ++i) fn(i, dense_(i, j));
    }
  }

  Eigen::VectorXd column(Index j) const {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(rows_);
    for_each_in_column(j, [&](Index i, double v) { c[i] = v; });
    return c;
  }

  double squared_frobenius_norm() const {
    double s = 0.0;
    for (Index j = 0; j < cols_; ++j)
      for_each_in_column(j, [&](Index, double v) { s += v * v; });
    return s;
  }

  Eigen::VectorXd column_squared_norms() const {
    Eigen::VectorXd s = Eigen::VectorXd::Zero(cols_);
    for (Index j = 0; j < cols_; ++j)
      for_each_in_column(j, [&](Index, double v) { s[j] += v * v; });
    return s;
  }

  // y = A x
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(rows_);
    for (Index j = 0; j < cols_; ++j) {
      const double xj = x[j];
      for_each_in_column(j, [&](Index i, double v) { y[i] += v * xj; });
    }
    return y;
  }

  // y = A^T x
  Eigen::VectorXd apply_transposed(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(cols_);
    for (Index j = 0; j < cols_; ++j) {
      double acc = 0.0;
      for_each_in_column(j, [&](Index i, double v) { acc += v * x[i]; });
      y[j] = acc;
    }
    return y;
  }

  // Y = A X, X is cols() x c.
  Eigen::MatrixXd apply_matrix(const Eigen::MatrixXd& X) const {
    Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(rows_, X.cols());
    for (Index j = 0; j < cols_; ++j)
      for_each_in_column(j, [&](Index i, double v) { Y.row(i) += v * X.row(j); });
    return Y;
  }

  // Y = A^T X, X is rows() x c.
  Eigen::MatrixXd apply_transposed_matrix(const Eigen::MatrixXd& X) const {
    Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(cols_, X.cols());
    for (Index j = 0; j < cols_; ++j)
      for_each_in_column(j, [&](Index i, double v) { Y.row(j) += v * X.row(i); });
    return Y;
  }

  Eigen::MatrixXd to_dense() const {
    if (!sparse_) return dense_;
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(rows_, cols_);
    for (Index j = 0; j < cols_; ++j)
      for_each_in_column(j, [&](Index i, double v) { d(i, j) = v; });
    return d;
  }

  DataMatrix select_columns(std::span<const Index> cols) const {
    if (!sparse_) {
      Eigen::MatrixXd d(rows_, static_cast<Index>(cols.size()));
      for (std::size_t t = 0; t < cols.size(); ++t) d.col(static_cast<Index>(t)) = dense_.col(cols[t]);
      return Dense(std::move(d));
    }
    std::vector<Index> ptr{0};
    std::vector<Index> ridx;
    std::vector<double> vals;
    for (Index j : cols) {
      for (Index p = col_ptr_[j]; p < col_ptr_[j + 1]; ++p) {
        ridx.push_back(row_idx_[p]);
        vals.push_back(values_[p]);
      }
      ptr.push_back(static_cast<Index>(ridx.size()));
    }
    return Sparse(rows_, static_cast<Index>(cols.size()), std::move(ptr), std::move(ridx),
                  std::move(vals));
  }

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  bool sparse_ = false;
  Eigen::MatrixXd dense_;
  std::vector<Index> col_ptr_;
  std::vector<Index> row_idx_;
  std::vector<double> values_;
};

// Read-only view of a column subset M(:, cols), exposing the same kernel
// surface as DataMatrix so the iterative solvers can run on cluster
// submatrices without copying.
class ColumnSubsetView {
 public:
  ColumnSubsetView(const DataMatrix& m, std::span<const Index> cols) : m_(&m), cols_(cols) {}

  Index rows() const { return m_->rows(); }
  Index cols() const { return static_cast<Index>(cols_.size()); }

  template <class Fn>
  void for_each_in_column(Index j, Fn&& fn) const {
    m_->for_each_in_column(cols_[j], std::forward<Fn>(fn));
  }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(rows());
    for (Index j = 0; j < cols(); ++j) {
      const double xj = x[j];
      for_each_in_column(j, [&](Index i, double v) { y[i] += v * xj; });
    }
    return y;
  }

  Eigen::VectorXd apply_transposed(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(cols());
    for (Index j = 0; j < cols(); ++j) {
      double acc = 0.0;
      for_each_in_column(j, [&](Index i, double v) { acc += v * x[i]; });
      y[j] = acc;
    }
    return y;
  }

  double squared_frobenius_norm() const {
    double s = 0.0;
    for (Index j = 0; j < cols(); ++j)
      for_each_in_column(j, [&](Index, double v) { s += v * v; });
    return s;
  }

 private:
  const DataMatrix* m_;
  std::span<const Index> cols_;
};

// Anything a power/subspace iteration can run on.
template <class M>
concept MatrixLike = requires(const M& a, const Eigen::VectorXd& v) {
  { a.rows() } -> std::convertible_to<Index>;
  { a.cols() } -> std::convertible_to<Index>;
  { a.apply(v) } -> std::convertible_to<Eigen::VectorXd>;
  { a.apply_transposed(v) } -> std::convertible_to<Eigen::VectorXd>;
  { a.squared_frobenius_norm() } -> std::convertible_to<double>;
};

}  // namespace onmf

#endif  // ONMF_MATRIX_HPP_
