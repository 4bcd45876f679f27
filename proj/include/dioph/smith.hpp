#pragma once

#include "dioph/matrix.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dioph {

/// D = P * A * Q with P, Q unimodular and D diagonal, d_1 | d_2 | ... ,
/// nonzero entries canonical and trailing zeros.
template <EuclideanDomain T> struct SmithDecomposition {
  Matrix<T> D;
  Matrix<T> P;
  Matrix<T> Q;

  Index rank() const {
    Index t = 0;
    while (t < std::min(D.rows(), D.cols()) && !is_zero(D(t, t)))
      ++t;
    return t;
  }

  /// The nonzero diagonal entries q_1 | ... | q_t.
  std::vector<T> invariants() const {
    std::vector<T> out;
    for (Index i = 0; i < rank(); ++i)
      out.push_back(D(i, i));
    return out;
  }
};

namespace detail {

template <EuclideanDomain T> class SmithReducer {
public:
  explicit SmithReducer(const Matrix<T>& a)
      : a_(a), p_(identity<T>(a.rows())), q_(identity<T>(a.cols())) {}

  SmithDecomposition<T> run() {
    const Index m = a_.rows(), n = a_.cols();
    Index t = 0;
    for (Index k = 0; k < std::min(m, n); ++k) {
      if (!select_pivot(k))
        break;
      clear_cross(k);
      make_canonical(k);
      ++t;
    }
    for (Index i = 0; i < t; ++i)
      for (Index j = i + 1; j < t; ++j)
        if (!divides(a_(i, i), a_(j, j)))
          fix_pair(i, j);
    for (Index i = 0; i + 1 < t; ++i)
      if (!divides(a_(i, i), a_(i + 1, i + 1)))
        throw InternalConsistencyError("smith_normal_form: divisibility chain broken");
    return {std::move(a_), std::move(p_), std::move(q_)};
  }

private:
  // Smallest delta, then lowest row, then lowest column.
  bool select_pivot(Index k) {
    Index best_i = -1, best_j = -1;
    for (Index i = k; i < a_.rows(); ++i)
      for (Index j = k; j < a_.cols(); ++j) {
        if (is_zero(a_(i, j)))
          continue;
        if (best_i < 0 || delta(a_(i, j)) < delta(a_(best_i, best_j))) {
          best_i = i;
          best_j = j;
        }
      }
    if (best_i < 0)
      return false;
    if (best_i != k) {
      a_.row(best_i).swap(a_.row(k));
      p_.row(best_i).swap(p_.row(k));
    }
    if (best_j != k) {
      a_.col(best_j).swap(a_.col(k));
      q_.col(best_j).swap(q_.col(k));
    }
    return true;
  }

  static void mix_rows(Matrix<T>& m, Index i, Index j, const T& x, const T& y, const T& s,
                       const T& t) {
    for (Index c = 0; c < m.cols(); ++c) {
      T u = m(i, c), v = m(j, c);
      m(i, c) = x * u + y * v;
      m(j, c) = s * u + t * v;
    }
  }

  static void mix_cols(Matrix<T>& m, Index i, Index j, const T& x, const T& y, const T& s,
                       const T& t) {
    for (Index r = 0; r < m.rows(); ++r) {
      T u = m(r, i), v = m(r, j);
      m(r, i) = x * u + y * v;
      m(r, j) = s * u + t * v;
    }
  }

  // Zero a(i, col) against the pivot row k.
  void eliminate_in_column(Index k, Index i, Index col) {
    const T a = a_(k, col), b = a_(i, col);
    if (divides(a, b)) {
      const T c = exact_div(b, a);
      mix_rows(a_, i, k, T(1), T(-c), T(0), T(1));
      mix_rows(p_, i, k, T(1), T(-c), T(0), T(1));
      return;
    }
    auto [g, x, y] = ext_gcd(a, b);
    const T s = -exact_div(b, g), t = exact_div(a, g);
    mix_rows(a_, k, i, x, y, s, t);
    mix_rows(p_, k, i, x, y, s, t);
  }

  // Zero a(row, j) against the pivot column k.
  void eliminate_in_row(Index k, Index j, Index row) {
    const T a = a_(row, k), b = a_(row, j);
    if (divides(a, b)) {
      const T c = exact_div(b, a);
      mix_cols(a_, j, k, T(1), T(-c), T(0), T(1));
      mix_cols(q_, j, k, T(1), T(-c), T(0), T(1));
      return;
    }
    auto [g, x, y] = ext_gcd(a, b);
    const T s = -exact_div(b, g), t = exact_div(a, g);
    mix_cols(a_, k, j, x, y, s, t);
    mix_cols(q_, k, j, x, y, s, t);
  }

  void clear_cross(Index k) {
    for (;;) {
      for (Index i = k + 1; i < a_.rows(); ++i)
        if (!is_zero(a_(i, k)))
          eliminate_in_column(k, i, k);
      for (Index j = k + 1; j < a_.cols(); ++j)
        if (!is_zero(a_(k, j)))
          eliminate_in_row(k, j, k);
      bool clean = true;
      for (Index i = k + 1; i < a_.rows() && clean; ++i)
        clean = is_zero(a_(i, k));
      if (clean)
        return;
    }
  }

  void make_canonical(Index k) {
    auto [c, u] = EuclideanTraits<T>::canonical(a_(k, k));
    if (u == T(1))
      return;
    a_.row(k) *= u;
    p_.row(k) *= u;
  }

  // diag(a, b) -> diag(gcd, lcm) by one column addition and two eliminations.
  void fix_pair(Index i, Index j) {
    mix_cols(a_, i, j, T(1), T(1), T(0), T(1));
    mix_cols(q_, i, j, T(1), T(1), T(0), T(1));
    eliminate_in_column(i, j, i);
    eliminate_in_row(i, j, i);
    make_canonical(i);
    make_canonical(j);
  }

  Matrix<T> a_;
  Matrix<T> p_;
  Matrix<T> q_;
};

} // namespace detail

template <EuclideanDomain T> SmithDecomposition<T> smith_normal_form(const Matrix<T>& a) {
  return detail::SmithReducer<T>(a).run();
}

/// Some integral X with A X = B, or nullopt when none exists.
template <EuclideanDomain T>
std::optional<Matrix<T>> solve_integral(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows())
    throw std::invalid_argument("solve_integral: row counts differ");
  const auto snf = smith_normal_form(a);
  const Index t = snf.rank();
  const Matrix<T> c = snf.P * b;
  Matrix<T> y = Matrix<T>::Zero(a.cols(), b.cols());
  for (Index i = 0; i < c.rows(); ++i)
    for (Index j = 0; j < c.cols(); ++j) {
      if (i < t) {
        auto [q, r] = div_rem(T(c(i, j)), T(snf.D(i, i)));
        if (!is_zero(r))
          return std::nullopt;
        y(i, j) = q;
      } else if (!is_zero(c(i, j))) {
        return std::nullopt;
      }
    }
  return Matrix<T>(snf.Q * y);
}

} // namespace dioph
