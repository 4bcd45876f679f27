#pragma once

// The reduced system Z = (d I_r | K) associated to A through an invertible
// row transformation over the fraction field and a column permutation.

#include "dioph/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace dioph {

template <EuclideanDomain T> struct ReducedSystem {
  Matrix<T> A;
  Index rank = 0;    ///< r
  Index nullity = 0; ///< f = n - r
  T d;
  Matrix<T> K; ///< r x f
  /// sigma[j] is the column of A moved to position j (pivots first).
  std::vector<Index> sigma;
  Matrix<T> Z; ///< m x n, (d I_r | K) over m - r zero rows
  Matrix<T> J; ///< first r rows of Z

  Index ambient() const { return rank + nullity; }

  /// The permutation matrix with A * Sigma == A(:, sigma).
  Matrix<T> permutation() const {
    Matrix<T> s = Matrix<T>::Zero(ambient(), ambient());
    for (Index j = 0; j < ambient(); ++j)
      s(sigma[j], j) = T(1);
    return s;
  }

  /// Sigma * x, row by row: moves coordinates of the reduced system back to
  /// the variable order of A.
  template <class Derived> Matrix<T> unpermute(const Eigen::MatrixBase<Derived>& x) const {
    Matrix<T> out(x.rows(), x.cols());
    for (Index j = 0; j < x.rows(); ++j)
      out.row(sigma[j]) = x.row(j);
    return out;
  }

  /// Sigma^-1 * x.
  template <class Derived> Matrix<T> permute(const Eigen::MatrixBase<Derived>& x) const {
    Matrix<T> out(x.rows(), x.cols());
    for (Index j = 0; j < x.rows(); ++j)
      out.row(j) = x.row(sigma[j]);
    return out;
  }

  /// d * (V(1) | ... | V(f)) in reduced coordinates: the n x f block (-K ; d I).
  Matrix<T> scaled_v() const {
    Matrix<T> v(ambient(), nullity);
    v.topRows(rank) = -K;
    v.bottomRows(nullity) = d * identity<T>(nullity);
    return v;
  }
};

/// Builds Z and J around given data. Used by reduce_matrix and by callers
/// that already hold a reduced form.
template <EuclideanDomain T>
ReducedSystem<T> make_reduced_system(Matrix<T> a, T d, Matrix<T> k, std::vector<Index> sigma) {
  const Index r = k.rows(), f = k.cols(), n = r + f;
  if (a.cols() != n || static_cast<Index>(sigma.size()) != n)
    throw std::invalid_argument("make_reduced_system: inconsistent dimensions");
  if (r <= 0 || f <= 0 || a.rows() < r)
    throw std::invalid_argument("make_reduced_system: rank must satisfy 0 < r < n");
  if (is_zero(d))
    throw std::invalid_argument("make_reduced_system: d must be nonzero");
  std::vector<Index> check = sigma;
  std::sort(check.begin(), check.end());
  for (Index j = 0; j < n; ++j)
    if (check[j] != j)
      throw std::invalid_argument("make_reduced_system: sigma is not a permutation");

  ReducedSystem<T> rs;
  rs.rank = r;
  rs.nullity = f;
  rs.d = std::move(d);
  rs.K = std::move(k);
  rs.sigma = std::move(sigma);
  rs.J.resize(r, n);
  rs.J.leftCols(r) = rs.d * identity<T>(r);
  rs.J.rightCols(f) = rs.K;
  rs.Z = Matrix<T>::Zero(a.rows(), n);
  rs.Z.topRows(r) = rs.J;
  rs.A = std::move(a);
  return rs;
}

/// Divides d and K by the content g = gcd(d, K_ij).
template <EuclideanDomain T> ReducedSystem<T> normalize_content(const ReducedSystem<T>& rs) {
  const T g = gcd(rs.d, content(rs.K));
  if (is_unit(g))
    return rs;
  auto [d, unit] = EuclideanTraits<T>::canonical(exact_div(rs.d, g));
  Matrix<T> k = rs.K.unaryExpr([&](const T& x) { return T(exact_div(x, g) * unit); });
  return make_reduced_system(rs.A, std::move(d), std::move(k), rs.sigma);
}

/// Reduced system with the minimal canonical d: the lcm of the reduced
/// denominators of the row echelon form of A.
template <EuclideanDomain T> ReducedSystem<T> reduce_matrix(const Matrix<T>& a) {
  const auto e = rref(a);
  const Index n = a.cols(), r = e.rank();
  if (r == 0 || r == n)
    throw RankOutOfScope(r, n);

  std::vector<Index> sigma = e.pivots;
  std::vector<bool> is_pivot(n, false);
  for (Index p : e.pivots)
    is_pivot[p] = true;
  for (Index j = 0; j < n; ++j)
    if (!is_pivot[j])
      sigma.push_back(j);

  const Index f = n - r;
  T d(1);
  for (Index i = 0; i < r; ++i)
    for (Index j = r; j < n; ++j)
      d = lcm(d, e.form(i, sigma[j]).denominator());

  Matrix<T> k(r, f);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < f; ++j) {
      const auto& x = e.form(i, sigma[r + j]);
      k(i, j) = x.numerator() * exact_div(d, x.denominator());
    }

  auto rs = make_reduced_system(a, std::move(d), std::move(k), std::move(sigma));
  if (!is_unit(gcd(rs.d, content(rs.K))))
    throw InternalConsistencyError("reduce_matrix: content of (d | K) is not a unit");
  return rs;
}

} // namespace dioph
