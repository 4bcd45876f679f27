#pragma once

// Dense exact matrices over R and over its fraction field.

#include "dioph/fraction.hpp"
#include "dioph/ring.hpp"

#include <Eigen/Core>

#include <stdexcept>
#include <vector>

namespace dioph {

using Index = Eigen::Index;

template <class T> using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T> using Vector = Eigen::Matrix<T, Eigen::Dynamic, 1>;
template <class T> using FractionMatrix = Matrix<Fraction<T>>;

template <class Derived> bool is_zero_matrix(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (!(a(i, j) == Scalar(0)))
        return false;
  return true;
}

template <EuclideanDomain T> Matrix<T> identity(Index n) { return Matrix<T>::Identity(n, n); }

template <EuclideanDomain T> FractionMatrix<T> to_fractions(const Matrix<T>& a) {
  return a.template cast<Fraction<T>>();
}

/// Reduced row echelon form over the fraction field.
template <EuclideanDomain T> struct RowEchelon {
  FractionMatrix<T> form;
  std::vector<Index> pivots; ///< strictly increasing column indices
  Index rank() const { return static_cast<Index>(pivots.size()); }
};

template <EuclideanDomain T> RowEchelon<T> rref(FractionMatrix<T> e) {
  const Index m = e.rows(), n = e.cols();
  std::vector<Index> pivots;
  Index row = 0;
  for (Index col = 0; col < n && row < m; ++col) {
    Index piv = row;
    while (piv < m && e(piv, col).is_zero())
      ++piv;
    if (piv == m)
      continue;
    if (piv != row)
      e.row(piv).swap(e.row(row));
    const Fraction<T> inv = Fraction<T>(1) / e(row, col);
    for (Index j = col; j < n; ++j)
      e(row, j) *= inv;
    for (Index i = 0; i < m; ++i) {
      if (i == row || e(i, col).is_zero())
        continue;
      const Fraction<T> factor = e(i, col);
      for (Index j = col; j < n; ++j)
        e(i, j) -= factor * e(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(e), std::move(pivots)};
}

template <EuclideanDomain T> RowEchelon<T> rref(const Matrix<T>& a) { return rref<T>(to_fractions(a)); }

template <EuclideanDomain T> Index rank(const Matrix<T>& a) { return rref(a).rank(); }

/// Fraction-free (Bareiss) determinant.
template <EuclideanDomain T> T det(Matrix<T> a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("det: matrix is not square");
  const Index n = a.rows();
  if (n == 0)
    return T(1);
  T sign(1);
  T prev(1);
  for (Index k = 0; k + 1 < n; ++k) {
    if (is_zero(a(k, k))) {
      Index i = k + 1;
      while (i < n && is_zero(a(i, k)))
        ++i;
      if (i == n)
        return T(0);
      a.row(i).swap(a.row(k));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i)
      for (Index j = k + 1; j < n; ++j)
        a(i, j) = exact_div(T(a(i, j) * a(k, k) - a(i, k) * a(k, j)), prev);
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

template <EuclideanDomain T> bool is_unimodular(const Matrix<T>& a) {
  return a.rows() == a.cols() && is_unit(det(a));
}

/// Exact inverse of a unimodular matrix.
template <EuclideanDomain T> Matrix<T> inverse_unimodular(const Matrix<T>& u) {
  if (u.rows() != u.cols())
    throw std::invalid_argument("inverse_unimodular: matrix is not square");
  const Index n = u.rows();
  FractionMatrix<T> aug(n, 2 * n);
  aug.leftCols(n) = to_fractions(u);
  aug.rightCols(n) = to_fractions<T>(identity<T>(n));
  auto e = rref<T>(std::move(aug));
  if (e.rank() != n || (n > 0 && e.pivots.back() != n - 1))
    throw std::invalid_argument("inverse_unimodular: matrix is singular");
  Matrix<T> inv(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const auto& x = e.form(i, n + j);
      if (!x.is_integral())
        throw std::invalid_argument("inverse_unimodular: matrix is not unimodular");
      inv(i, j) = x.numerator() * EuclideanTraits<T>::unit_inverse(x.denominator());
    }
  return inv;
}

/// Canonical gcd of all entries.
template <class Derived> auto content(const Eigen::MatrixBase<Derived>& a) {
  using T = typename Derived::Scalar;
  T g(0);
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      g = gcd(g, T(a(i, j)));
  return g;
}

/// Entrywise b / a where a divides every entry.
template <class Derived, class T>
Matrix<T> divide_exactly(const Eigen::MatrixBase<Derived>& b, const T& a) {
  return Matrix<T>(b).unaryExpr([&](const T& x) { return exact_div(x, a); });
}

} // namespace dioph
