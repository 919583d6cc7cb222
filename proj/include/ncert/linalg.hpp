#pragma once

// Row reduction and null spaces over either doubles (tolerance-controlled)
// or exact rationals (tolerance ignored).

#include <cmath>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

#include "ncert/rational.hpp"

namespace ncert::linalg {

template <typename Scalar>
inline bool is_zero(const Scalar& x, double tol) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    (void)tol;
    return x == 0;
  } else {
    using std::abs;
    return abs(x) <= tol;
  }
}

template <typename Scalar>
inline double magnitude(const Scalar& x) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return std::abs(to_double(x));
  } else {
    using std::abs;
    return static_cast<double>(abs(x));
  }
}

/// In-place reduction to reduced row echelon form. Returns the pivot column of
/// each nonzero row. Partial pivoting by magnitude keeps the floating-point
/// path stable; for rationals any nonzero pivot is exact.
template <typename Scalar>
std::vector<Eigen::Index> reduce_row_echelon(
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m, double tol = 1e-12) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index best = -1;
    double best_mag = 0.0;
    for (Eigen::Index r = row; r < m.rows(); ++r) {
      if (is_zero(m(r, col), tol)) continue;
      const double mag = magnitude(m(r, col));
      if (best < 0 || mag > best_mag) {
        best = r;
        best_mag = mag;
      }
    }
    if (best < 0) {
      for (Eigen::Index r = row; r < m.rows(); ++r) m(r, col) = Scalar(0);
      continue;
    }
    m.row(row).swap(m.row(best));
    const Scalar pivot = m(row, col);
    for (Eigen::Index c = col; c < m.cols(); ++c) m(row, c) /= pivot;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col), tol)) continue;
      const Scalar factor = m(r, col);
      for (Eigen::Index c = col; c < m.cols(); ++c) m(r, c) -= factor * m(row, c);
      m(r, col) = Scalar(0);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

/// Columns span the right null space of a. One basis vector per free column,
/// with a 1 in that column.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> null_space(
    const Eigen::MatrixBase<Derived>& a, double tol = 1e-12) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Mat m = a;
  const auto pivots = reduce_row_echelon(m, tol);
  std::vector<bool> is_pivot(static_cast<std::size_t>(a.cols()), false);
  for (auto p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;

  std::vector<Eigen::Index> free_cols;
  for (Eigen::Index c = 0; c < a.cols(); ++c)
    if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);

  Mat basis = Mat::Zero(a.cols(), static_cast<Eigen::Index>(free_cols.size()));
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const auto f = free_cols[k];
    const auto kk = static_cast<Eigen::Index>(k);
    basis(f, kk) = Scalar(1);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      basis(pivots[r], kk) = -m(static_cast<Eigen::Index>(r), f);
  }
  return basis;
}

template <typename Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& a, double tol = 1e-12) {
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> m = a;
  return static_cast<Eigen::Index>(reduce_row_echelon(m, tol).size());
}

}  // namespace ncert::linalg
