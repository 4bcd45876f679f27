#pragma once

#include "dioph/matrix.hpp"

#include <string>
#include <vector>

namespace dioph {

/// Reduced row echelon form of a matrix over R/Rp, lifted to canonical
/// residues.
template <EuclideanDomain T> struct ModularEchelon {
  Matrix<T> form;
  std::vector<Index> leading;
  T modulus;
  Index rank() const { return static_cast<Index>(leading.size()); }
};

template <EuclideanDomain T> ModularEchelon<T> rref_mod_p(const Matrix<T>& k, const T& p) {
  if (!is_prime(p))
    throw NotPrime("rref_mod_p: modulus is not prime");
  const Index m = k.rows(), n = k.cols();
  Matrix<T> h = k.unaryExpr([&](const T& x) { return residue(x, p); });
  std::vector<Index> leading;
  Index row = 0;
  for (Index col = 0; col < n && row < m; ++col) {
    Index piv = row;
    while (piv < m && is_zero(h(piv, col)))
      ++piv;
    if (piv == m)
      continue;
    if (piv != row)
      h.row(piv).swap(h.row(row));
    const T inv = inverse_mod(T(h(row, col)), p);
    for (Index j = col; j < n; ++j)
      h(row, j) = residue(T(h(row, j) * inv), p);
    for (Index i = 0; i < m; ++i) {
      if (i == row || is_zero(h(i, col)))
        continue;
      const T factor = h(i, col);
      for (Index j = col; j < n; ++j)
        h(i, j) = residue(T(h(i, j) - factor * h(row, j)), p);
    }
    leading.push_back(col);
    ++row;
  }
  return {std::move(h), std::move(leading), p};
}

} // namespace dioph
