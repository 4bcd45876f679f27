#pragma once

// Independent checks. Nothing here depends on the reduced-system machinery;
// everything goes through integral solving and Smith forms of coefficient
// matrices, or through plain enumeration.

#include "dioph/lattice.hpp"
#include "dioph/smith.hpp"

#include <cstdint>
#include <optional>

namespace dioph {

template <EuclideanDomain T, class Derived>
bool is_solution(const Matrix<T>& a, const Eigen::MatrixBase<Derived>& v) {
  if (a.cols() != v.rows())
    throw std::invalid_argument("is_solution: dimension mismatch");
  return is_zero_matrix(Matrix<T>(a * v));
}

/// Integral X with sup * X == sub as lattices, when sub ⊆ sup.
template <EuclideanDomain T>
std::optional<Matrix<T>> inclusion_coefficients(const LatticeBasis<T>& sub,
                                                const LatticeBasis<T>& sup) {
  if (sub.ambient() != sup.ambient())
    return std::nullopt;
  return solve_integral(Matrix<T>(sub.denominator * sup.columns),
                        Matrix<T>(sup.denominator * sub.columns));
}

template <EuclideanDomain T>
bool contains(const LatticeBasis<T>& sup, const LatticeBasis<T>& sub) {
  return inclusion_coefficients(sub, sup).has_value();
}

template <EuclideanDomain T>
bool same_lattice(const LatticeBasis<T>& a, const LatticeBasis<T>& b) {
  if (a.ambient() != b.ambient() || a.rank() != b.rank())
    return false;
  return contains(a, b) && contains(b, a);
}

/// Invariant factors of sup/sub from the Smith form of the coefficient
/// matrix of sub in sup.
template <EuclideanDomain T>
QuotientStructure<T> quotient_invariants_oracle(const LatticeBasis<T>& sub,
                                                const LatticeBasis<T>& sup) {
  if (sub.rank() != sup.rank())
    throw std::invalid_argument("quotient_invariants_oracle: ranks differ");
  auto x = inclusion_coefficients(sub, sup);
  if (!x)
    throw NotIncluded("quotient_invariants_oracle: sublattice is not contained in the lattice");
  const auto snf = smith_normal_form(*x);
  if (snf.rank() != x->cols())
    throw NotIncluded("quotient_invariants_oracle: sublattice has smaller rank");
  return make_quotient_structure(snf.invariants());
}

/// Structure of (R^n ∩ F-span(B)) / span(B): the torsion of R^n / span(B).
template <EuclideanDomain T> QuotientStructure<T> saturation_quotient(const LatticeBasis<T>& b) {
  if (!b.integral())
    throw std::invalid_argument("saturation_quotient: basis must be integral");
  const auto snf = smith_normal_form(b.columns);
  if (snf.rank() != b.rank())
    throw std::invalid_argument("saturation_quotient: columns are dependent");
  return make_quotient_structure(snf.invariants());
}

inline constexpr std::uint64_t kDefaultBruteForceBound = 1'000'000;

struct KernelCensus {
  QuotientStructure<Integer> structure;
  Integer cardinality;
};

/// Enumerates {alpha in (Z/d)^f : K alpha ≡ 0 mod d} and derives its group
/// structure from element orders alone.
KernelCensus brute_force_kernel_structure(const Matrix<Integer>& k, const Integer& d,
                                          std::uint64_t bound = kDefaultBruteForceBound);

} // namespace dioph
