#pragma once

// Bases of the nullspace S = {x in R^n : A x = 0}.

#include "dioph/lattice.hpp"
#include "dioph/modular.hpp"
#include "dioph/reduce.hpp"
#include "dioph/smith.hpp"

namespace dioph {

/// Generators of {alpha in R^f : K alpha ≡ 0 mod d}, one per column.
template <EuclideanDomain T> struct CongruenceKernel {
  T modulus;
  Matrix<T> coefficient_basis;
};

template <EuclideanDomain T>
CongruenceKernel<T> solve_congruence_kernel(const Matrix<T>& k, const T& d) {
  if (is_zero(d))
    throw std::invalid_argument("solve_congruence_kernel: modulus must be nonzero");
  // K = P^-1 D Q^-1, so K alpha ≡ 0 iff q_i beta_i ≡ 0 for beta = Q^-1 alpha.
  const auto snf = smith_normal_form(k);
  Matrix<T> basis = snf.Q;
  for (Index i = 0; i < snf.rank(); ++i)
    basis.col(i) *= exact_div(d, gcd(d, T(snf.D(i, i))));
  return {d, std::move(basis)};
}

template <EuclideanDomain T> struct DirectSolution {
  LatticeBasis<T> basis;
  ReducedSystem<T> reduced;
  CongruenceKernel<T> kernel;
};

/// S = Sigma N, with N read off the congruence kernel in the coordinates
/// V(1), ..., V(f).
template <EuclideanDomain T> DirectSolution<T> nullspace_basis_direct(const Matrix<T>& a) {
  auto rs = reduce_matrix(a);
  auto kernel = solve_congruence_kernel(rs.K, rs.d);
  Matrix<T> n_basis;
  try {
    n_basis = divide_exactly(rs.scaled_v() * kernel.coefficient_basis, rs.d);
  } catch (const InternalConsistencyError&) {
    throw InternalConsistencyError("nullspace_basis_direct: congruence solution not integral");
  }
  LatticeBasis<T> basis{rs.unpermute(n_basis), T(1)};
  if (!is_zero_matrix(Matrix<T>(a * basis.columns)))
    throw InternalConsistencyError("nullspace_basis_direct: basis does not solve A x = 0");
  return {std::move(basis), std::move(rs), std::move(kernel)};
}

/// The nullspace of D = P A Q is spanned by the trailing canonical vectors,
/// so the trailing columns of Q span S.
template <EuclideanDomain T> LatticeBasis<T> nullspace_basis_snf(const Matrix<T>& a) {
  const auto snf = smith_normal_form(a);
  const Index t = snf.rank();
  return {snf.Q.rightCols(a.cols() - t), T(1)};
}

/// Coefficients of z_1, ..., z_f against V(1), ..., V(f) for prime d:
/// p e_l for each leading column l of the mod-p echelon form H of K, then
/// e_j - sum_k H(k, j) e_{l_k} for each remaining column j.
template <EuclideanDomain T> Matrix<T> prime_case_coefficients(const ReducedSystem<T>& rs) {
  if (!is_prime(rs.d))
    throw NotPrime("prime_case_basis: d is not prime; use the general method");
  const T& p = rs.d;
  const auto h = rref_mod_p(rs.K, p);
  const Index f = rs.nullity, s = h.rank();
  std::vector<bool> leading(f, false);
  for (Index l : h.leading)
    leading[l] = true;

  Matrix<T> g = Matrix<T>::Zero(f, f);
  Index col = 0;
  for (Index l : h.leading)
    g(l, col++) = p;
  for (Index j = 0; j < f; ++j) {
    if (leading[j])
      continue;
    g(j, col) = T(1);
    for (Index k = 0; k < s; ++k)
      g(h.leading[k], col) = -h.form(k, j);
    ++col;
  }
  return g;
}

template <EuclideanDomain T> LatticeBasis<T> prime_case_basis(const ReducedSystem<T>& rs) {
  const Matrix<T> g = prime_case_coefficients(rs);
  return {rs.unpermute(divide_exactly(rs.scaled_v() * g, rs.d)), T(1)};
}

} // namespace dioph
