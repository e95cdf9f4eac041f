// Copyright 2026 The vorpca Authors
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

#pragma once

// Dense linear-algebra substrate: data matrices, orthonormal subspaces,
// point-to-subspace distances, rank-r PCA and the trimmed objective.

#include <Eigen/Dense>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "vorpca/error.hpp"

namespace vorpca {

using Index = std::size_t;

inline constexpr double kOrthonormalityTol = 1e-10;

/// n x d table of finite reals, one row per data point.
class DataMatrix {
 public:
  explicit DataMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
    if (values_.rows() < 1 || values_.cols() < 1)
      throw InvalidArgument("data matrix must have at least one row and one column");
    if (!values_.allFinite()) throw InvalidArgument("data matrix contains non-finite values");
  }

  Index rows() const { return static_cast<Index>(values_.rows()); }
  Index cols() const { return static_cast<Index>(values_.cols()); }
  const Eigen::MatrixXd& values() const { return values_; }
  auto row(Index i) const { return values_.row(static_cast<Eigen::Index>(i)); }

 private:
  Eigen::MatrixXd values_;
};

/// Flips column signs so the first entry of magnitude above 1e-12 is
/// nonnegative. Gives equal inputs bit-identical bases.
inline void canonicalize_signs(Eigen::MatrixXd& basis) {
  for (Eigen::Index c = 0; c < basis.cols(); ++c) {
    for (Eigen::Index i = 0; i < basis.rows(); ++i) {
      const double v = basis(i, c);
      if (std::abs(v) > 1e-12) {
        if (v < 0) basis.col(c) = -basis.col(c);
        break;
      }
    }
  }
}

/// A point of Gr(r, d), held as a d x r matrix with orthonormal columns.
class Subspace {
 public:
  /// Adopts `basis` as is. Throws unless 1 <= r < d and the columns are
  /// orthonormal to within kOrthonormalityTol.
  explicit Subspace(Eigen::MatrixXd basis) : basis_(std::move(basis)) {
    const auto d = basis_.rows();
    const auto r = basis_.cols();
    if (r < 1 || r >= d)
      throw InvalidArgument("subspace rank must satisfy 1 <= r < d (got r=" + std::to_string(r) +
                            ", d=" + std::to_string(d) + ")");
    if (!basis_.allFinite()) throw InvalidArgument("subspace basis contains non-finite values");
    const double dev =
        (basis_.transpose() * basis_ - Eigen::MatrixXd::Identity(r, r)).cwiseAbs().maxCoeff();
    if (dev > kOrthonormalityTol)
      throw InvalidArgument("subspace basis is not orthonormal (deviation " + std::to_string(dev) +
                            ")");
  }

  /// Orthonormalizes the columns of an arbitrary full-rank d x r matrix
  /// with Householder QR and applies the sign convention.
  static Subspace span_of(const Eigen::MatrixXd& columns) {
    const auto d = columns.rows();
    const auto r = columns.cols();
    if (r < 1 || r >= d) throw InvalidArgument("subspace rank must satisfy 1 <= r < d");
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(columns);
    const Eigen::MatrixXd r_factor = qr.matrixQR().topLeftCorner(r, r).triangularView<Eigen::Upper>();
    if (r_factor.diagonal().cwiseAbs().minCoeff() <= 1e-12 * std::max(1.0, columns.norm()))
      throw InvalidArgument("columns are linearly dependent");
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(d, r);
    canonicalize_signs(q);
    return Subspace(std::move(q));
  }

  Index ambient_dim() const { return static_cast<Index>(basis_.rows()); }
  Index rank() const { return static_cast<Index>(basis_.cols()); }
  const Eigen::MatrixXd& basis() const { return basis_; }

  Eigen::VectorXd project(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    check_dim(static_cast<Index>(x.size()));
    return basis_ * (basis_.transpose() * x);
  }

  void check_dim(Index d) const {
    if (d != ambient_dim())
      throw InvalidArgument("dimension mismatch: vector has " + std::to_string(d) +
                            " entries, subspace lives in R^" + std::to_string(ambient_dim()));
  }

 private:
  Eigen::MatrixXd basis_;
};

/// Strictly increasing row indices marking outliers.
class OutlierSet {
 public:
  OutlierSet() = default;

  explicit OutlierSet(std::vector<Index> indices) : indices_(std::move(indices)) {
    for (std::size_t i = 1; i < indices_.size(); ++i)
      if (indices_[i] <= indices_[i - 1])
        throw InvalidArgument("outlier indices must be strictly increasing");
  }

  /// Sorts, rejects duplicates, and checks every index against n.
  static OutlierSet from_unsorted(std::vector<Index> indices, Index n) {
    std::sort(indices.begin(), indices.end());
    if (std::adjacent_find(indices.begin(), indices.end()) != indices.end())
      throw InvalidArgument("duplicate outlier index");
    OutlierSet s(std::move(indices));
    s.check_bound(n);
    return s;
  }

  void check_bound(Index n) const {
    if (!indices_.empty() && indices_.back() >= n)
      throw InvalidArgument("outlier index " + std::to_string(indices_.back()) +
                            " out of range for " + std::to_string(n) + " rows");
  }

  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  const std::vector<Index>& indices() const { return indices_; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }
  bool contains(Index i) const { return std::binary_search(indices_.begin(), indices_.end(), i); }

  friend auto operator<=>(const OutlierSet&, const OutlierSet&) = default;
  friend bool operator==(const OutlierSet&, const OutlierSet&) = default;

 private:
  std::vector<Index> indices_;
};

struct PcaSolution {
  Subspace subspace;
  double loss;  ///< squared Frobenius residual
};

struct TrimmedLoss {
  double loss;
  OutlierSet outliers;
};

/// Squared distance of every row of `rows` to `v`.
inline Eigen::VectorXd squared_distances(const Eigen::Ref<const Eigen::MatrixXd>& rows,
                                         const Subspace& v) {
  v.check_dim(static_cast<Index>(rows.cols()));
  const Eigen::MatrixXd& b = v.basis();
  const Eigen::MatrixXd residual = rows - (rows * b) * b.transpose();
  return residual.rowwise().squaredNorm();
}

inline double dist_point_subspace(const Eigen::Ref<const Eigen::VectorXd>& x, const Subspace& v) {
  v.check_dim(static_cast<Index>(x.size()));
  return (x - v.project(x)).norm();
}

/// Indices of the k largest entries; among equal values the lower index
/// is taken first.
inline OutlierSet farthest_k(const Eigen::Ref<const Eigen::VectorXd>& sq_dist, Index k) {
  const auto n = static_cast<Index>(sq_dist.size());
  if (k > n) throw InvalidArgument("k exceeds number of rows");
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  auto farther = [&](Index a, Index b) {
    const double da = sq_dist(static_cast<Eigen::Index>(a));
    const double db = sq_dist(static_cast<Eigen::Index>(b));
    return da != db ? da > db : a < b;
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    farther);
  order.resize(k);
  std::sort(order.begin(), order.end());
  return OutlierSet(std::move(order));
}

/// Rows of `x` whose index is not in `outliers`, in original order.
inline Eigen::MatrixXd complement_rows(const Eigen::MatrixXd& x, const OutlierSet& outliers) {
  outliers.check_bound(static_cast<Index>(x.rows()));
  Eigen::MatrixXd out(x.rows() - static_cast<Eigen::Index>(outliers.size()), x.cols());
  Eigen::Index dst = 0;
  auto it = outliers.begin();
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    if (it != outliers.end() && *it == static_cast<Index>(i)) {
      ++it;
      continue;
    }
    out.row(dst++) = x.row(i);
  }
  return out;
}

namespace detail {

inline void check_rank(Index r, Index d) {
  if (r < 1 || r >= d)
    throw InvalidArgument("rank must satisfy 1 <= r < d (got r=" + std::to_string(r) +
                          ", d=" + std::to_string(d) + ")");
}

/// Best rank-r subspace of the given rows (at least one row) by SVD.
inline PcaSolution pca_rows(const Eigen::Ref<const Eigen::MatrixXd>& rows, Index r) {
  const auto d = static_cast<Index>(rows.cols());
  check_rank(r, d);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeFullV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  double loss = 0.0;
  for (Eigen::Index i = static_cast<Eigen::Index>(r); i < sigma.size(); ++i)
    loss += sigma(i) * sigma(i);
  Eigen::MatrixXd basis = svd.matrixV().leftCols(static_cast<Eigen::Index>(r));
  canonicalize_signs(basis);
  return {Subspace(std::move(basis)), loss};
}

}  // namespace detail

/// Rank-r PCA through the origin: span of the top-r right singular
/// vectors, loss = sum of the trailing squared singular values.
inline PcaSolution pca_fit(const DataMatrix& x, Index r) {
  return detail::pca_rows(x.values(), r);
}

/// PCA on the rows not in `outliers`.
inline PcaSolution pca_fit_excluding(const DataMatrix& x, const OutlierSet& outliers, Index r) {
  if (outliers.size() >= x.rows()) throw InvalidArgument("cannot exclude every row");
  if (outliers.empty()) return pca_fit(x, r);
  return detail::pca_rows(complement_rows(x.values(), outliers), r);
}

/// Sum of squared distances over rows not in `outliers`, in row order.
inline double outlier_objective(const DataMatrix& x, const OutlierSet& outliers, const Subspace& l) {
  outliers.check_bound(x.rows());
  const Eigen::VectorXd sq = squared_distances(x.values(), l);
  double loss = 0.0;
  for (Index i = 0; i < x.rows(); ++i)
    if (!outliers.contains(i)) loss += sq(static_cast<Eigen::Index>(i));
  return loss;
}

/// Discards the k rows farthest from `v` (lower index first on ties) and
/// sums the squared distances of the rest.
inline TrimmedLoss trimmed_loss(const DataMatrix& x, const Subspace& v, Index k) {
  if (k >= x.rows())
    throw InvalidArgument("k must be smaller than the number of rows (k=" + std::to_string(k) +
                          ", n=" + std::to_string(x.rows()) + ")");
  const Eigen::VectorXd sq = squared_distances(x.values(), v);
  OutlierSet outliers = farthest_k(sq, k);
  double loss = 0.0;
  for (Index i = 0; i < x.rows(); ++i)
    if (!outliers.contains(i)) loss += sq(static_cast<Eigen::Index>(i));
  return {loss, std::move(outliers)};
}

/// Subtracts column means. Returns the centred data and the means.
inline std::pair<DataMatrix, Eigen::VectorXd> center_columns(const DataMatrix& x) {
  Eigen::VectorXd mean = x.values().colwise().mean().transpose();
  Eigen::MatrixXd centred = x.values().rowwise() - mean.transpose();
  return {DataMatrix(std::move(centred)), std::move(mean)};
}

}  // namespace vorpca
