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
// Numerical kernels shared by every factorization algorithm in the library:
// dominant singular triplets by power iteration, leading right singular
// subspaces by subspace iteration, projection onto the Stiefel manifold of
// orthonormal-row matrices, and row-wise nonnegative least squares.

#ifndef ONMF_LINALG_HPP_
#define ONMF_LINALG_HPP_

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "onmf/errors.hpp"
#include "onmf/matrix.hpp"

namespace onmf {

struct SingularTriplet {
  double sigma = 0.0;
  Eigen::VectorXd left;   // unit vector, length m
  Eigen::VectorXd right;  // unit vector, length n
  bool converged = true;
};

// k x n matrix X with X X^T = I_k.
struct OrthonormalRows {
  Eigen::MatrixXd values;
  bool converged = true;

  Index k() const { return values.rows(); }
  Index n() const { return values.cols(); }
};

inline double orthonormality_defect(const Eigen::MatrixXd& x) {
  Eigen::MatrixXd g = x * x.transpose();
  g.diagonal().array() -= 1.0;
  return g.norm();
}

constexpr double kDefaultPowerTol = 1e-10;

inline long default_power_iterations(Index rows, Index cols) {
  return 10 * std::max<Index>({rows, cols, 100});
}

// Dominant singular triplet of a nonnegative matrix by alternating power
// iteration, started from the normalized all-ones vector. The fixed start
// makes the result deterministic, and for nonnegative input every iterate
// stays nonnegative. Convergence means both residuals ||A^T u - s v|| and
// ||A v - s u|| are below tol*s; on hitting the cap the best iterate is
// returned with converged = false.
template <MatrixLike M>
SingularTriplet dominant_singular_triplet(const M& a, double tol = kDefaultPowerTol,
                                          long max_iter = -1) {
  const Index m = a.rows(), n = a.cols();
  if (a.squared_frobenius_norm() == 0.0) throw ZeroMatrixError("matrix is identically zero");
  if (max_iter < 0) max_iter = default_power_iterations(m, n);

  Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  Eigen::VectorXd w = a.apply(v);
  SingularTriplet out;
  out.converged = false;
  for (long it = 0; it < max_iter; ++it) {
    const double nu = w.norm();
    if (nu == 0.0) break;  // unreachable for nonzero nonnegative input
    Eigen::VectorXd u = w / nu;
    Eigen::VectorXd z = a.apply_transposed(u);
    const double sigma = z.norm();
    if (sigma == 0.0) break;
    v = z / sigma;
    out.sigma = sigma;
    out.left = u;
    out.right = v;
    w = a.apply(v);
    if ((w - sigma * u).norm() <= tol * sigma) {
      out.converged = true;
      break;
    }
  }
  return out;
}

// Nonnegative dominant left singular vector of a nonnegative matrix. The
// all-ones power iteration keeps iterates nonnegative, so only rounding-level
// cleanup is needed: entries in (-1e-12, 0) are clamped to zero and the
// vector renormalized; anything more negative would mean a broken invariant.
template <MatrixLike M>
Eigen::VectorXd nonneg_dominant_left_vector(const M& a, double tol = kDefaultPowerTol,
                                            long max_iter = -1, bool* converged = nullptr) {
  SingularTriplet t = dominant_singular_triplet(a, tol, max_iter);
  if (converged) *converged = t.converged;
  Eigen::VectorXd u = t.left;
  for (Index i = 0; i < u.size(); ++i) {
    if (u[i] < -1e-12)
      throw Error("power iteration produced a negative entry on nonnegative input");
    if (u[i] < 0.0) u[i] = 0.0;
  }
  const double norm = u.norm();
  if (norm == 0.0) throw ZeroMatrixError("dominant vector vanished");
  return u / norm;
}

// Nearest orthonormal-row matrix to vhat in Frobenius norm, i.e. the unitary
// polar factor. Computed through the k x k Gram matrix: with vhat = P S Q^T,
// vhat vhat^T = P S^2 P^T, so the polar factor P Q^T equals
// (vhat vhat^T)^{-1/2} vhat. Costs O(k^2 n) instead of O(k n^2); k is small
// everywhere this library is used.
inline OrthonormalRows project_stiefel(const Eigen::MatrixXd& vhat) {
  const Index k = vhat.rows();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(vhat * vhat.transpose());
  const Eigen::VectorXd lambda = eig.eigenvalues().cwiseMax(0.0);
  if (std::sqrt(lambda[0]) < 1e-12)
    throw RankDeficientError("smallest singular value below 1e-12; projection not unique");
  Eigen::VectorXd inv_sqrt(k);
  for (Index i = 0; i < k; ++i) inv_sqrt[i] = 1.0 / std::sqrt(lambda[i]);
  const Eigen::MatrixXd& s = eig.eigenvectors();
  Eigen::MatrixXd x = s * inv_sqrt.asDiagonal() * s.transpose() * vhat;
  // One polishing pass if the Gram route lost digits on an ill-conditioned
  // input; near-orthonormal input makes it a no-op.
  if (orthonormality_defect(x) > 1e-12) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig2(x * x.transpose());
    const Eigen::VectorXd l2 = eig2.eigenvalues().cwiseMax(0.0);
    Eigen::VectorXd inv2(k);
    for (Index i = 0; i < k; ++i) inv2[i] = l2[i] > 0.0 ? 1.0 / std::sqrt(l2[i]) : 0.0;
    x = eig2.eigenvectors() * inv2.asDiagonal() * eig2.eigenvectors().transpose() * x;
  }
  return OrthonormalRows{std::move(x), true};
}

namespace detail {

// Deterministic pseudo-random fill for iteration starts (not user-visible
// randomness; a fixed stream keeps every run reproducible).
inline Eigen::MatrixXd deterministic_start(Index rows, Index cols) {
  std::uint64_t state = 0x9E3779B97F4A7C15ull;
  auto next = [&state]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };
  Eigen::MatrixXd x(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i)
      x(i, j) = static_cast<double>(next() >> 11) * 0x1.0p-52 - 1.0;
  return x;
}

inline Eigen::MatrixXd thin_q(const Eigen::MatrixXd& x) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
  return qr.householderQ() * Eigen::MatrixXd::Identity(x.rows(), x.cols());
}

}  // namespace detail

constexpr long kSubspaceSweepCap = 5000;

// Leading k right singular vectors of M, returned as the rows of a k x n
// matrix in descending singular-value order. Subspace iteration on M^T M
// applied implicitly, re-orthonormalized and Rayleigh-Ritz rotated every
// sweep. Zero singular values converge trivially (their residual vanishes),
// with the returned directions being a deterministic orthonormal completion.
template <MatrixLike M>
OrthonormalRows top_k_right_singular_vectors(const M& mat, Index k,
                                             double residual_tol = 1e-9) {
  const Index n = mat.cols();
  Eigen::MatrixXd q = detail::thin_q(detail::deterministic_start(n, k));
  OrthonormalRows out;
  out.converged = false;
  for (long sweep = 0; sweep < kSubspaceSweepCap; ++sweep) {
    Eigen::MatrixXd z = mat.apply_matrix(q);        // m x k
    Eigen::MatrixXd t = z.transpose() * z;          // k x k, = Q^T M^T M Q
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(t);
    // Eigen sorts ascending; flip to descending singular order.
    Eigen::MatrixXd s(k, k);
    Eigen::VectorXd theta(k);
    for (Index i = 0; i < k; ++i) {
      s.col(i) = eig.eigenvectors().col(k - 1 - i);
      theta[i] = std::max(0.0, eig.eigenvalues()[k - 1 - i]);
    }
    Eigen::MatrixXd qr_rot = q * s;                  // Ritz vectors
    Eigen::MatrixXd zs = z * s;
    Eigen::MatrixXd w = mat.apply_transposed_matrix(zs);  // M^T M * Ritz vectors
    double worst = 0.0;
    for (Index i = 0; i < k; ++i)
      worst = std::max(worst, (w.col(i) - theta[i] * qr_rot.col(i)).norm());
    if (worst <= residual_tol * std::max(theta[0], 1e-300)) {
      out.values = qr_rot.transpose();
      out.converged = true;
      return out;
    }
    q = detail::thin_q(w);
    out.values = qr_rot.transpose();
  }
  return out;
}

namespace detail {

// Lawson-Hanson style active-set NNLS on the normal equations
//   min_{x >= 0} x^T G x / 2 - b^T x,   G = V V^T,  b = V m_r.
// The passive-set systems are solved exactly (rank-revealing QR), so the KKT
// conditions hold to solver precision even when G is singular: the normal
// equations are always consistent because b lies in range(G).
inline Eigen::VectorXd nnls_active_set(const Eigen::MatrixXd& g, const Eigen::VectorXd& b,
                                       bool* hit_cap = nullptr) {
  const Index k = g.rows();
  const double w_tol = 1e-11 * std::max(1.0, b.cwiseAbs().maxCoeff());
  Eigen::VectorXd x = Eigen::VectorXd::Zero(k);
  std::vector<bool> passive(k, false);
  Eigen::VectorXd w = b;  // negative gradient b - G x
  const long cap = 30 * (k + 1) * (k + 1);
  if (hit_cap) *hit_cap = false;
  for (long outer = 0; outer < cap; ++outer) {
    Index best = -1;
    double best_w = w_tol;
    for (Index j = 0; j < k; ++j)
      if (!passive[j] && w[j] > best_w) {
        best_w = w[j];
        best = j;
      }
    if (best < 0) return x;
    passive[best] = true;
    for (long inner = 0; inner < cap; ++inner) {
      std::vector<Index> p;
      for (Index j = 0; j < k; ++j)
        if (passive[j]) p.push_back(j);
      Eigen::MatrixXd gpp(p.size(), p.size());
      Eigen::VectorXd bp(p.size());
      for (std::size_t r = 0; r < p.size(); ++r) {
        bp[static_cast<Index>(r)] = b[p[r]];
        for (std::size_t c = 0; c < p.size(); ++c) gpp(static_cast<Index>(r), static_cast<Index>(c)) = g(p[r], p[c]);
      }
      Eigen::VectorXd zp = gpp.colPivHouseholderQr().solve(bp);
      bool all_positive = true;
      for (Index r = 0; r < zp.size(); ++r)
        if (zp[r] <= 0.0) all_positive = false;
      if (all_positive) {
        x.setZero();
        for (std::size_t r = 0; r < p.size(); ++r) x[p[r]] = zp[static_cast<Index>(r)];
        break;
      }
      // Step to the boundary and drop the variables that hit zero.
      double alpha = 1.0;
      for (std::size_t r = 0; r < p.size(); ++r) {
        if (zp[static_cast<Index>(r)] <= 0.0) {
          const double xr = x[p[r]];
          const double denom = xr - zp[static_cast<Index>(r)];
          if (denom > 0.0) alpha = std::min(alpha, xr / denom);
        }
      }
      Eigen::VectorXd z = Eigen::VectorXd::Zero(k);
      for (std::size_t r = 0; r < p.size(); ++r) z[p[r]] = zp[static_cast<Index>(r)];
      x += alpha * (z - x);
      for (Index j = 0; j < k; ++j) {
        if (passive[j] && x[j] <= 1e-14) {
          x[j] = 0.0;
          passive[j] = false;
        }
      }
    }
    w = b - g * x;
  }
  if (hit_cap) *hit_cap = true;
  return x;
}

}  // namespace detail

struct NnlsResult {
  Eigen::MatrixXd u;  // m x k, nonnegative
  // True when V V^T is numerically singular; the rows are still KKT points.
  bool degenerate = false;
};

// Solves min_{U >= 0} ||M - U V||_F^2 one row at a time: row r of U only
// touches row r of M, so the problem splits into m independent NNLS solves
// sharing the Gram matrix V V^T.
template <MatrixLike M>
NnlsResult nnls_solve(const M& mat, const Eigen::MatrixXd& v) {
  const Index m = mat.rows(), k = v.rows();
  Eigen::MatrixXd g = v * v.transpose();
  Eigen::MatrixXd vt = v.transpose();
  Eigen::MatrixXd b = mat.apply_matrix(vt);  // m x k, row r = V m_r
  NnlsResult out;
  out.u.resize(m, k);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> rank_probe(g);
  rank_probe.setThreshold(1e-12);
  out.degenerate = rank_probe.rank() < k;
  for (Index r = 0; r < m; ++r) {
    bool cap = false;
    out.u.row(r) = detail::nnls_active_set(g, b.row(r).transpose(), &cap).transpose();
    if (cap) out.degenerate = true;
  }
  return out;
}

}  // namespace onmf

#endif  // ONMF_LINALG_HPP_
