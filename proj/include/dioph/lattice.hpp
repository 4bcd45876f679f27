#pragma once

// The lattices M = dU ⊆ S ⊆ U attached to a reduced system, and the module
// structure of S/M and U/S read off the Smith form of K.

#include "dioph/reduce.hpp"
#include "dioph/smith.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace dioph {

/// Lattice spanned by the columns of `columns`, each divided by `denominator`.
template <EuclideanDomain T> struct LatticeBasis {
  Matrix<T> columns;
  T denominator = T(1);

  Index ambient() const { return columns.rows(); }
  Index rank() const { return columns.cols(); }
  bool integral() const { return is_unit(denominator); }
};

/// Invariant factors g_1 | ... | g_s of a finite-length quotient, units
/// dropped. Empty means the quotient is trivial.
template <EuclideanDomain T> struct QuotientStructure {
  std::vector<T> invariant_factors;

  bool trivial() const { return invariant_factors.empty(); }
  friend bool operator==(const QuotientStructure&, const QuotientStructure&) = default;
};

/// Canonicalizes, drops units and orders by divisibility. Throws when the
/// values cannot be arranged in a divisibility chain or include zero.
template <EuclideanDomain T> QuotientStructure<T> make_quotient_structure(std::vector<T> values) {
  std::vector<T> kept;
  for (auto& v : values) {
    if (is_zero(v))
      throw std::invalid_argument("quotient structure: zero factor (infinite quotient)");
    if (!is_unit(v))
      kept.push_back(canonical(v));
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const T& a, const T& b) { return delta(a) < delta(b); });
  for (std::size_t i = 0; i + 1 < kept.size(); ++i)
    if (!divides(kept[i], kept[i + 1]))
      throw std::invalid_argument("quotient structure: factors do not form a divisibility chain");
  return {std::move(kept)};
}

template <EuclideanDomain T> LatticeBasis<T> m_basis(const ReducedSystem<T>& rs) {
  return {rs.unpermute(rs.scaled_v()), T(1)};
}

/// Basis Sigma V(1), ..., Sigma V(f) of U, stored as numerators over d.
template <EuclideanDomain T> LatticeBasis<T> u_basis(const ReducedSystem<T>& rs) {
  return {rs.unpermute(rs.scaled_v()), rs.d};
}

/// S/M ≅ ⊕ R/gcd(d, q_i) ⊕ (R/d)^(f-t), with q_i the nonzero Smith invariants of K.
template <EuclideanDomain T> QuotientStructure<T> quotient_S_over_M(const ReducedSystem<T>& rs) {
  const auto q = smith_normal_form(rs.K).invariants();
  std::vector<T> factors;
  for (const auto& qi : q)
    factors.push_back(gcd(rs.d, qi));
  for (Index i = static_cast<Index>(q.size()); i < rs.nullity; ++i)
    factors.push_back(rs.d);
  return make_quotient_structure(std::move(factors));
}

/// U/S ≅ ⊕ R/d_i with d_i = d / gcd(d, q_i) = lcm(d, q_i) / q_i.
template <EuclideanDomain T> QuotientStructure<T> quotient_U_over_S(const ReducedSystem<T>& rs) {
  const auto q = smith_normal_form(rs.K).invariants();
  std::vector<T> factors;
  for (auto it = q.rbegin(); it != q.rend(); ++it) {
    const T di = exact_div(rs.d, gcd(rs.d, *it));
    const T mi = exact_div(lcm(rs.d, *it), *it);
    if (!are_associates(di, mi))
      throw InternalConsistencyError("quotient_U_over_S: d/gcd(d,q) != lcm(d,q)/q");
    factors.push_back(di);
  }
  return make_quotient_structure(std::move(factors));
}

/// Dual structure with respect to the chain dW ⊆ N ⊆ W: pad with units to
/// length f and send each a to d/a.
template <EuclideanDomain T>
QuotientStructure<T> complementary_structure(const QuotientStructure<T>& q, const T& d, Index f) {
  if (static_cast<Index>(q.invariant_factors.size()) > f)
    throw std::invalid_argument("complementary_structure: more factors than the rank");
  std::vector<T> out;
  for (Index i = static_cast<Index>(q.invariant_factors.size()); i < f; ++i)
    out.push_back(d);
  for (const auto& a : q.invariant_factors) {
    if (!divides(a, d))
      throw std::invalid_argument("complementary_structure: factor does not divide d");
    out.push_back(exact_div(d, a));
  }
  return make_quotient_structure(std::move(out));
}

struct LatticeFlags {
  bool U_equals_S = false;
  bool S_equals_M = false;
};

template <EuclideanDomain T> LatticeFlags classify(const ReducedSystem<T>& rs) {
  LatticeFlags flags;
  flags.U_equals_S = divides(rs.d, content(rs.K));
  const auto q = smith_normal_form(rs.K).invariants();
  bool coprime = std::all_of(q.begin(), q.end(), [&](const T& qi) { return is_unit(gcd(rs.d, qi)); });
  flags.S_equals_M = coprime && (is_unit(rs.d) || static_cast<Index>(q.size()) == rs.nullity);
  return flags;
}

/// Order of the quotient up to units: the product of its invariant factors.
template <EuclideanDomain T> T index(const QuotientStructure<T>& q) {
  T prod(1);
  for (const auto& g : q.invariant_factors)
    prod *= g;
  return prod;
}

/// Prime powers of all invariant factors, sorted by prime then exponent.
template <EuclideanDomain T>
std::vector<PrimePower<T>> elementary_divisors(const QuotientStructure<T>& q) {
  std::vector<PrimePower<T>> out;
  for (const auto& g : q.invariant_factors)
    for (auto& pp : factorize(g))
      out.push_back(std::move(pp));
  std::sort(out.begin(), out.end(), [](const PrimePower<T>& a, const PrimePower<T>& b) {
    if (a.prime != b.prime)
      return delta(a.prime) < delta(b.prime);
    return a.exponent < b.exponent;
  });
  return out;
}

/// Regroups prime powers into invariant factors (largest powers together).
template <EuclideanDomain T>
QuotientStructure<T> from_elementary_divisors(const std::vector<PrimePower<T>>& divisors) {
  std::vector<std::vector<unsigned>> by_prime;
  std::vector<T> primes;
  for (const auto& pp : divisors) {
    auto it = std::find(primes.begin(), primes.end(), pp.prime);
    if (it == primes.end()) {
      primes.push_back(pp.prime);
      by_prime.push_back({});
      it = primes.end() - 1;
    }
    by_prime[it - primes.begin()].push_back(pp.exponent);
  }
  std::size_t s = 0;
  for (auto& exps : by_prime) {
    std::sort(exps.rbegin(), exps.rend());
    s = std::max(s, exps.size());
  }
  std::vector<T> factors(s, T(1));
  for (std::size_t k = 0; k < by_prime.size(); ++k)
    for (std::size_t i = 0; i < by_prime[k].size(); ++i)
      factors[s - 1 - i] *= PrimePower<T>{primes[k], by_prime[k][i]}.value();
  return make_quotient_structure(std::move(factors));
}

} // namespace dioph
