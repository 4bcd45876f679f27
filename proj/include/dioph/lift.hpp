#pragma once

// Growing a basis of a sublattice M into a basis of its saturation
// S = R^n ∩ F-span(M), one invariant factor, one p-elementary divisor or one
// prime of the index at a time.

#include "dioph/lattice.hpp"
#include "dioph/solve.hpp"
#include "dioph/verify.hpp"

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace dioph {

enum class LiftMethod { unimodular_completion, euclidean_reduction, intro_prime };

/// How the relation a_1 u_1 + ... + a_f u_f - g v = 0 is turned into a basis.
enum class RelationWay { unimodular, euclidean };

struct LiftOptions {
  std::uint64_t seed = 0;
  int random_trials = 2000;
};

template <EuclideanDomain T> struct LiftStep {
  LatticeBasis<T> incoming;
  std::vector<T> coefficients; ///< a_1, ..., a_f
  T modulus;                   ///< g
  LatticeBasis<T> outgoing;
  LiftMethod method;
};

template <EuclideanDomain T> struct LiftResult {
  LatticeBasis<T> basis;
  std::vector<LiftStep<T>> steps;
};

namespace detail {

template <class Derived, class T> bool has_order(const Eigen::MatrixBase<Derived>& a, const T& g) {
  return is_unit(gcd(content(a), g));
}

template <EuclideanDomain T> void require_integral(const LatticeBasis<T>& b, const char* who) {
  if (!b.integral())
    throw std::invalid_argument(std::string(who) + ": basis must be integral");
}

// a ≡ c_p mod p^k for every prime power p^k || g, where c_p is a kernel
// column not divisible by p. Needs factorization of g.
template <EuclideanDomain T>
std::optional<Vector<T>> crt_order_vector(const Matrix<T>& kernel, const T& g) {
  Vector<T> a = Vector<T>::Zero(kernel.rows());
  for (const auto& pp : factorize(g)) {
    const T pk = pp.value();
    Index found = -1;
    for (Index j = 0; j < kernel.cols() && found < 0; ++j)
      if (!divides(pp.prime, content(kernel.col(j))))
        found = j;
    if (found < 0)
      return std::nullopt;
    const T rest = exact_div(g, pk);
    const T idempotent = rest * inverse_mod(residue(rest, pk), pk);
    a += kernel.col(found) * idempotent;
  }
  return Vector<T>(a.unaryExpr([&](const T& x) { return residue(x, g); }));
}

} // namespace detail

/// Coefficients a with M a ≡ 0 (mod g) entrywise and gcd(a_1, ..., a_f, g) a
/// unit, so v = M a / g is integral and has order exactly g modulo M.
template <EuclideanDomain T>
Vector<T> find_order_vector(const LatticeBasis<T>& mb, const T& g, const LiftOptions& opts = {}) {
  detail::require_integral(mb, "find_order_vector");
  const Index f = mb.rank();
  if (is_unit(g)) {
    Vector<T> e1 = Vector<T>::Zero(f);
    if (f > 0)
      e1(0) = T(1);
    return e1;
  }
  const Matrix<T> kernel = solve_congruence_kernel(mb.columns, g).coefficient_basis;

  for (Index j = 0; j < f; ++j)
    if (detail::has_order(kernel.col(j), g))
      return kernel.col(j);

  for (Index i = 0; i < f; ++i)
    for (Index j = i + 1; j < f; ++j) {
      Vector<T> sum = kernel.col(i) + kernel.col(j);
      if (detail::has_order(sum, g))
        return sum;
      Vector<T> diff = kernel.col(i) - kernel.col(j);
      if (detail::has_order(diff, g))
        return diff;
    }

  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<int> coeff(-1, 1);
  for (int trial = 0; trial < opts.random_trials; ++trial) {
    Vector<T> combo = Vector<T>::Zero(f);
    for (Index j = 0; j < f; ++j)
      combo += kernel.col(j) * T(coeff(rng));
    if (detail::has_order(combo, g))
      return combo;
  }

  if constexpr (std::same_as<T, Integer>) {
    if (auto a = detail::crt_order_vector(kernel, g); a && detail::has_order(*a, g))
      return *a;
  }
  throw NotLargestFactor("find_order_vector: no element of order " + to_string(g) +
                         " in the quotient");
}

/// Unimodular Q with a * Q = (1, 0, ..., 0); requires gcd(a) to be a unit.
template <EuclideanDomain T> Matrix<T> complete_relation_unimodular(const Vector<T>& a) {
  if (a.size() > 0 && is_unit(a(0))) {
    const T inv = EuclideanTraits<T>::unit_inverse(a(0));
    Matrix<T> q = identity<T>(a.size());
    q(0, 0) = inv;
    for (Index j = 1; j < a.size(); ++j)
      q(0, j) = -inv * a(j);
    return q;
  }
  const auto snf = smith_normal_form(Matrix<T>(a.transpose()));
  if (snf.rank() == 0 || !is_unit(snf.D(0, 0)))
    throw std::invalid_argument("complete_relation_unimodular: entries have a non-unit gcd");
  // a Q = P^-1 D = unit * e_1
  Matrix<T> q = snf.Q;
  const T scale = T(snf.P(0, 0)) * EuclideanTraits<T>::unit_inverse(snf.D(0, 0));
  q.col(0) *= scale;
  return q;
}

namespace detail {

template <EuclideanDomain T>
Matrix<T> basis_from_relation_unimodular(const Matrix<T>& gens, const Vector<T>& rel) {
  const Matrix<T> q = complete_relation_unimodular(rel);
  // new generators w_i = sum_j (Q^-1)_ij u_j
  const Matrix<T> w = gens * inverse_unimodular(q).transpose();
  if (!is_zero_matrix(w.col(0)))
    throw InternalConsistencyError("unimodular completion: first generator is not zero");
  return w.rightCols(w.cols() - 1);
}

template <EuclideanDomain T>
Matrix<T> basis_from_relation_euclidean(Matrix<T> gens, Vector<T> rel) {
  const Index count = rel.size();
  for (;;) {
    Index i = -1;
    for (Index j = 0; j < count; ++j)
      if (!is_zero(rel(j)) && (i < 0 || delta(rel(j)) < delta(rel(i))))
        i = j;
    if (i < 0)
      throw InternalConsistencyError("euclidean reduction: relation vanished");
    if (is_unit(rel(i))) {
      Matrix<T> basis(gens.rows(), count - 1);
      for (Index j = 0, c = 0; j < count; ++j)
        if (j != i)
          basis.col(c++) = gens.col(j);
      return basis;
    }
    bool progressed = false;
    for (Index j = 0; j < count; ++j) {
      if (j == i)
        continue;
      auto [q, r] = div_rem(T(rel(j)), T(rel(i)));
      if (!is_zero(q))
        gens.col(i) += gens.col(j) * q;
      rel(j) = r;
      progressed = progressed || !is_zero(r);
    }
    if (!progressed)
      throw InternalConsistencyError("euclidean reduction: relation coefficients share a factor");
  }
}

template <EuclideanDomain T>
void check_step(const LatticeBasis<T>& from, const LatticeBasis<T>& to, const T& g) {
  if (quotient_invariants_oracle(from, to) != make_quotient_structure(std::vector<T>{g}))
    throw InternalConsistencyError("lift step: new lattice is not a cyclic extension of order g");
}

} // namespace detail

/// One step: P = M + R v with v = (sum a_i u_i) / g, so P/M ≅ R/Rg.
template <EuclideanDomain T>
LiftStep<T> step_invariant_factor(const LatticeBasis<T>& mb, const T& g, RelationWay way,
                                  const LiftOptions& opts = {}) {
  detail::require_integral(mb, "step_invariant_factor");
  const LiftMethod method = way == RelationWay::unimodular ? LiftMethod::unimodular_completion
                                                           : LiftMethod::euclidean_reduction;
  if (is_unit(g))
    return {mb, {}, g, mb, method};

  const Vector<T> a = find_order_vector(mb, g, opts);
  if (!detail::has_order(a, g))
    throw InternalConsistencyError("step_invariant_factor: gcd(a, g) is not a unit");
  const Index f = mb.rank();
  Matrix<T> gens(mb.ambient(), f + 1);
  gens.leftCols(f) = mb.columns;
  gens.col(f) = divide_exactly(mb.columns * a, g);
  Vector<T> rel(f + 1);
  rel.head(f) = a;
  rel(f) = -g;

  Matrix<T> next = way == RelationWay::unimodular
                       ? detail::basis_from_relation_unimodular(gens, rel)
                       : detail::basis_from_relation_euclidean(gens, rel);
  LatticeBasis<T> out{std::move(next), T(1)};
  detail::check_step(mb, out, g);
  return {mb, std::vector<T>(a.data(), a.data() + a.size()), g, std::move(out), method};
}

/// Applies one step per invariant factor, largest first.
template <EuclideanDomain T>
LiftResult<T> lift_by_invariant_factors(const LatticeBasis<T>& mb, const QuotientStructure<T>& q,
                                        RelationWay way, const LiftOptions& opts = {}) {
  detail::require_integral(mb, "lift_by_invariant_factors");
  if (saturation_quotient(mb) != q)
    throw std::invalid_argument("lift_by_invariant_factors: q is not the structure of S/M");
  LiftResult<T> result{mb, {}};
  std::vector<T> remaining = q.invariant_factors;
  while (!remaining.empty()) {
    const T g = remaining.back();
    remaining.pop_back();
    auto step = step_invariant_factor(result.basis, g, way, opts);
    if (saturation_quotient(step.outgoing) != make_quotient_structure(remaining))
      throw InternalConsistencyError("lift_by_invariant_factors: remaining structure mismatch");
    result.basis = step.outgoing;
    result.steps.push_back(std::move(step));
  }
  return result;
}

/// One step for a maximal p-elementary divisor p^e: find v of order p^e,
/// normalize its coefficient at a position not divisible by p to 1 and swap
/// it into the basis.
template <EuclideanDomain T>
LiftStep<T> step_elementary_divisor(const LatticeBasis<T>& mb, const T& p, unsigned e,
                                    const LiftOptions& opts = {}) {
  detail::require_integral(mb, "step_elementary_divisor");
  const T pe = PrimePower<T>{p, e}.value();
  if (is_unit(pe))
    return {mb, {}, pe, mb, LiftMethod::intro_prime};

  const Vector<T> a = find_order_vector(mb, pe, opts);
  Index i = 0;
  while (i < a.size() && divides(p, T(a(i))))
    ++i;
  if (i == a.size())
    throw InternalConsistencyError("step_elementary_divisor: every coefficient divisible by p");

  const Vector<T> v = divide_exactly(mb.columns * a, pe);
  auto [g, x, y] = ext_gcd(T(a(i)), pe);
  const T u = EuclideanTraits<T>::unit_inverse(g);
  // x a_i + y p^e = 1, so v' = x v + y u_i has coefficient 1 at u_i.
  LatticeBasis<T> out{mb.columns, T(1)};
  out.columns.col(i) = v * T(x * u) + mb.columns.col(i) * T(y * u);
  detail::check_step(mb, out, pe);
  return {mb, std::vector<T>(a.data(), a.data() + a.size()), pe, std::move(out),
          LiftMethod::intro_prime};
}

template <EuclideanDomain T>
LiftResult<T> lift_by_elementary_divisors(const LatticeBasis<T>& mb,
                                          std::vector<PrimePower<T>> divisors,
                                          const LiftOptions& opts = {}) {
  detail::require_integral(mb, "lift_by_elementary_divisors");
  auto sorted = [](std::vector<PrimePower<T>> v) {
    std::sort(v.begin(), v.end(), [](const PrimePower<T>& a, const PrimePower<T>& b) {
      if (a.prime != b.prime)
        return delta(a.prime) < delta(b.prime);
      return a.exponent < b.exponent;
    });
    return v;
  };
  divisors = sorted(std::move(divisors));
  if (elementary_divisors(saturation_quotient(mb)) != divisors)
    throw std::invalid_argument("lift_by_elementary_divisors: divisors do not describe S/M");

  LiftResult<T> result{mb, {}};
  while (!divisors.empty()) {
    // Smallest prime first; within it, the largest exponent (last in order).
    auto last_of_prime = std::find_if(divisors.begin(), divisors.end(), [&](const auto& pp) {
      return pp.prime != divisors.front().prime;
    });
    const PrimePower<T> target = *std::prev(last_of_prime);
    divisors.erase(std::prev(last_of_prime));

    auto step = step_elementary_divisor(result.basis, target.prime, target.exponent, opts);
    if (elementary_divisors(saturation_quotient(step.outgoing)) != divisors)
      throw InternalConsistencyError("lift_by_elementary_divisors: remaining structure mismatch");
    result.basis = step.outgoing;
    result.steps.push_back(std::move(step));
  }
  return result;
}

/// The single-prime procedure: each step divides the remaining index by one
/// prime.
template <EuclideanDomain T>
LiftResult<T> lift_prime_at_a_time(const LatticeBasis<T>& mb, const T& index_value,
                                   const LiftOptions& opts = {}) {
  detail::require_integral(mb, "lift_prime_at_a_time");
  if (!are_associates(index(saturation_quotient(mb)), index_value))
    throw std::invalid_argument("lift_prime_at_a_time: index does not match i(M, S)");
  LiftResult<T> result{mb, {}};
  if (is_unit(index_value))
    return result;
  for (const auto& pp : factorize(index_value))
    for (unsigned k = 0; k < pp.exponent; ++k) {
      auto step = step_elementary_divisor(result.basis, pp.prime, 1, opts);
      result.basis = step.outgoing;
      result.steps.push_back(std::move(step));
    }
  if (!saturation_quotient(result.basis).trivial())
    throw InternalConsistencyError("lift_prime_at_a_time: index exhausted before reaching S");
  return result;
}

} // namespace dioph
