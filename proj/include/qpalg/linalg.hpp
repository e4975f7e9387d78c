#pragma once

// Exact linear algebra over a field scalar. Dense routines work on Eigen
// matrices with any exact Scalar (Rational in practice); no pivoting by
// magnitude, only by nonzeroness.

#include "qpalg/rational.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace qpalg {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixQ = Matrix<Rational>;
using VectorQ = Vector<Rational>;
using Index = Eigen::Index;

template <class Scalar>
struct RowEchelon {
  Matrix<Scalar> reduced;     ///< reduced row echelon form, zero rows at the bottom
  std::vector<Index> pivots;  ///< pivot column of each nonzero row
  Index rank() const { return static_cast<Index>(pivots.size()); }
};

/// Gauss-Jordan elimination to reduced row echelon form.
template <class Derived>
RowEchelon<typename Derived::Scalar> rref(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> m = input;
  std::vector<Index> pivots;
  Index row = 0;
  for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Index sel = -1;
    for (Index r = row; r < m.rows(); ++r)
      if (m(r, col) != 0) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    if (sel != row) m.row(sel).swap(m.row(row));
    const Scalar inv = Scalar(1) / m(row, col);
    for (Index c = col; c < m.cols(); ++c)
      if (m(row, c) != 0) m(row, c) *= inv;
    for (Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Scalar f = m(r, col);
      for (Index c = col; c < m.cols(); ++c)
        if (m(row, c) != 0) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

template <class Derived>
Index rank(const Eigen::MatrixBase<Derived>& m) {
  return rref(m).rank();
}

/// Columns form a basis of the right kernel {v : m v = 0}.
template <class Derived>
Matrix<typename Derived::Scalar> kernel(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const auto ech = rref(m);
  std::vector<bool> isPivot(static_cast<std::size_t>(m.cols()), false);
  for (Index p : ech.pivots) isPivot[static_cast<std::size_t>(p)] = true;
  std::vector<Index> free;
  for (Index c = 0; c < m.cols(); ++c)
    if (!isPivot[static_cast<std::size_t>(c)]) free.push_back(c);
  Matrix<Scalar> basis = Matrix<Scalar>::Zero(m.cols(), static_cast<Index>(free.size()));
  for (std::size_t k = 0; k < free.size(); ++k) {
    const Index f = free[k];
    basis(f, static_cast<Index>(k)) = 1;
    for (std::size_t r = 0; r < ech.pivots.size(); ++r)
      basis(ech.pivots[r], static_cast<Index>(k)) = -ech.reduced(static_cast<Index>(r), f);
  }
  return basis;
}

/// Columns form a basis of the column space, chosen among the input columns.
template <class Derived>
Matrix<typename Derived::Scalar> column_basis(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const auto ech = rref(m);
  Matrix<Scalar> out(m.rows(), ech.rank());
  for (std::size_t k = 0; k < ech.pivots.size(); ++k) out.col(static_cast<Index>(k)) = m.col(ech.pivots[k]);
  return out;
}

/// Some solution of a x = b, or nullopt when inconsistent.
template <class DA, class DB>
std::optional<Vector<typename DA::Scalar>> solve(const Eigen::MatrixBase<DA>& a,
                                                 const Eigen::MatrixBase<DB>& b) {
  using Scalar = typename DA::Scalar;
  Matrix<Scalar> aug(a.rows(), a.cols() + 1);
  aug << a, b;
  const auto ech = rref(aug);
  if (!ech.pivots.empty() && ech.pivots.back() == a.cols()) return std::nullopt;
  Vector<Scalar> x = Vector<Scalar>::Zero(a.cols());
  for (std::size_t r = 0; r < ech.pivots.size(); ++r)
    x(ech.pivots[r]) = ech.reduced(static_cast<Index>(r), a.cols());
  return x;
}

template <class Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  if (input.rows() != input.cols()) throw InputError("determinant of a non-square matrix");
  Matrix<Scalar> m = input;
  Scalar det(1);
  const Index n = m.rows();
  for (Index col = 0; col < n; ++col) {
    Index sel = -1;
    for (Index r = col; r < n; ++r)
      if (m(r, col) != 0) {
        sel = r;
        break;
      }
    if (sel < 0) return Scalar(0);
    if (sel != col) {
      m.row(sel).swap(m.row(col));
      det = -det;
    }
    det *= m(col, col);
    const Scalar inv = Scalar(1) / m(col, col);
    for (Index r = col + 1; r < n; ++r) {
      if (m(r, col) == 0) continue;
      const Scalar f = m(r, col) * inv;
      for (Index c = col; c < n; ++c)
        if (m(col, c) != 0) m(r, c) -= f * m(col, c);
    }
  }
  return det;
}

template <class Derived>
std::optional<Matrix<typename Derived::Scalar>> inverse(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) return std::nullopt;
  const Index n = m.rows();
  Matrix<Scalar> aug(n, 2 * n);
  aug << m, Matrix<Scalar>::Identity(n, n);
  const auto ech = rref(aug);
  if (ech.rank() < n || (n > 0 && ech.pivots[static_cast<std::size_t>(n - 1)] != n - 1)) return std::nullopt;
  return Matrix<Scalar>(ech.reduced.rightCols(n));
}

/// Sparse vector: strictly increasing indices, no stored zeros.
template <class Scalar>
using SparseVec = std::vector<std::pair<Index, Scalar>>;

/// Incrementally built row echelon basis of a subspace of a sparse coordinate
/// space. Every stored row is monic at its pivot (its smallest index), and
/// pivots are distinct.
template <class Scalar>
class SparseEchelon {
public:
  /// Reduces v against the basis; returns the remainder (zero iff v is in the span).
  SparseVec<Scalar> reduce(const SparseVec<Scalar>& v) const {
    std::map<Index, Scalar> acc(v.begin(), v.end());
    reduce_in_place(acc);
    return SparseVec<Scalar>(acc.begin(), acc.end());
  }

  /// Adds v to the basis. Returns true when it enlarged the span.
  bool insert(const SparseVec<Scalar>& v) {
    std::map<Index, Scalar> acc(v.begin(), v.end());
    reduce_in_place(acc);
    if (acc.empty()) return false;
    const Scalar inv = Scalar(1) / acc.begin()->second;
    SparseVec<Scalar> row;
    row.reserve(acc.size());
    for (auto& [c, x] : acc) row.emplace_back(c, x * inv);
    rows_.emplace(row.front().first, std::move(row));
    return true;
  }

  bool contains(const SparseVec<Scalar>& v) const { return reduce(v).empty(); }
  Index rank() const { return static_cast<Index>(rows_.size()); }
  bool is_pivot(Index c) const { return rows_.count(c) != 0; }
  const std::map<Index, SparseVec<Scalar>>& rows() const { return rows_; }

private:
  void reduce_in_place(std::map<Index, Scalar>& acc) const {
    auto it = acc.begin();
    while (it != acc.end()) {
      if (it->second == 0) {
        it = acc.erase(it);
        continue;
      }
      auto pr = rows_.find(it->first);
      if (pr == rows_.end()) {
        ++it;
        continue;
      }
      const Scalar f = it->second;
      const Index col = it->first;
      for (const auto& [c, x] : pr->second) {
        auto [pos, fresh] = acc.try_emplace(c, Scalar(0));
        pos->second -= f * x;
      }
      it = acc.find(col);
      if (it != acc.end() && it->second == 0) it = acc.erase(it);
    }
  }

  std::map<Index, SparseVec<Scalar>> rows_;
};

/// Rank and kernel of the linear map whose k-th column is images[k].
/// Kernel vectors are returned sparse in the domain coordinates.
template <class Scalar>
struct SparseKernelResult {
  Index rank = 0;
  std::vector<SparseVec<Scalar>> kernel;
};

template <class Scalar>
SparseKernelResult<Scalar> sparse_kernel(const std::vector<SparseVec<Scalar>>& images, Index codomainDim) {
  // Augment each image with a tag coordinate codomainDim + k so that a
  // vanishing image part exposes the dependency.
  SparseEchelon<Scalar> ech;
  SparseKernelResult<Scalar> out;
  for (std::size_t k = 0; k < images.size(); ++k) {
    SparseVec<Scalar> v = images[k];
    v.emplace_back(codomainDim + static_cast<Index>(k), Scalar(1));
    const auto rem = ech.reduce(v);
    if (!rem.empty() && rem.front().first >= codomainDim) {
      SparseVec<Scalar> ker;
      for (const auto& [c, x] : rem) ker.emplace_back(c - codomainDim, x);
      out.kernel.push_back(std::move(ker));
    } else {
      ++out.rank;
    }
    ech.insert(v);
  }
  return out;
}

} // namespace qpalg
