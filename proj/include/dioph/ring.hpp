#pragma once

// Euclidean-domain arithmetic. Everything in the library is written against
// EuclideanTraits<T>; the arbitrary-precision integer is the shipped instance.

#include "dioph/errors.hpp"
#include "dioph/integer.hpp"

#include <concepts>
#include <cstdint>
#include <iterator>
#include <sstream>
#include <string>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dioph {

template <class T> struct EuclideanTraits;

/// value == unit * a, with value the distinguished associate of a.
template <class T> struct Canonical {
  T value;
  T unit;
};

// clang-format off
template <class T>
concept EuclideanDomain = std::regular<T> && requires(const T& a, const T& b) {
  { EuclideanTraits<T>::div_rem(a, b) } -> std::same_as<std::pair<T, T>>;
  { EuclideanTraits<T>::delta(a) < EuclideanTraits<T>::delta(b) } -> std::convertible_to<bool>;
  { EuclideanTraits<T>::canonical(a) } -> std::same_as<Canonical<T>>;
  { EuclideanTraits<T>::is_unit(a) } -> std::convertible_to<bool>;
  { EuclideanTraits<T>::unit_inverse(a) } -> std::convertible_to<T>;
  { EuclideanTraits<T>::residue(a, b) } -> std::convertible_to<T>;
  { a + b } -> std::convertible_to<T>;
  { a - b } -> std::convertible_to<T>;
  { a * b } -> std::convertible_to<T>;
  { -a } -> std::convertible_to<T>;
};
// clang-format on

template <> struct EuclideanTraits<Integer> {
  /// Balanced division: |r| <= |b|/2.
  static std::pair<Integer, Integer> div_rem(const Integer& a, const Integer& b) {
    if (b == 0)
      throw std::domain_error("division by zero");
    Integer q = a / b;
    Integer r = a - q * b;
    if (2 * abs(r) > abs(b)) {
      if ((r < 0) == (b < 0)) {
        q += 1;
        r -= b;
      } else {
        q -= 1;
        r += b;
      }
    }
    return {std::move(q), std::move(r)};
  }

  static Integer delta(const Integer& a) { return abs(a); }

  static Canonical<Integer> canonical(const Integer& a) {
    if (a < 0)
      return {-a, Integer(-1)};
    return {a, Integer(1)};
  }

  static bool is_unit(const Integer& a) { return a == 1 || a == -1; }
  static Integer unit_inverse(const Integer& u) { return u; }

  /// Representative of a modulo m in {0, ..., |m|-1}.
  static Integer residue(const Integer& a, const Integer& m) {
    if (m == 0)
      throw std::domain_error("residue modulo zero");
    Integer r = a % m;
    if (r < 0)
      r += abs(m);
    return r;
  }
};

template <EuclideanDomain T> std::string to_string(const T& a) {
  std::ostringstream os;
  os << a;
  return os.str();
}

template <EuclideanDomain T> std::pair<T, T> div_rem(const T& a, const T& b) {
  return EuclideanTraits<T>::div_rem(a, b);
}

template <EuclideanDomain T> auto delta(const T& a) { return EuclideanTraits<T>::delta(a); }

template <EuclideanDomain T> bool is_zero(const T& a) { return a == T(0); }

template <EuclideanDomain T> bool is_unit(const T& a) { return EuclideanTraits<T>::is_unit(a); }

template <EuclideanDomain T> T canonical(const T& a) {
  return EuclideanTraits<T>::canonical(a).value;
}

template <EuclideanDomain T> bool are_associates(const T& a, const T& b) {
  return canonical(a) == canonical(b);
}

template <EuclideanDomain T> T residue(const T& a, const T& m) {
  return EuclideanTraits<T>::residue(a, m);
}

/// a | b
template <EuclideanDomain T> bool divides(const T& a, const T& b) {
  if (is_zero(a))
    return is_zero(b);
  return is_zero(div_rem(b, a).second);
}

/// b / a where a | b is an invariant of the caller.
template <EuclideanDomain T> T exact_div(const T& b, const T& a) {
  auto [q, r] = div_rem(b, a);
  if (!is_zero(r))
    throw InternalConsistencyError("inexact division");
  return q;
}

template <class T> struct GcdResult {
  T g;
  T x;
  T y;
};

/// g = x*a + y*b with g the canonical gcd; gcd(0, 0) = 0.
template <EuclideanDomain T> GcdResult<T> ext_gcd(const T& a, const T& b) {
  T r0 = a, r1 = b;
  T x0(1), x1(0);
  T y0(0), y1(1);
  while (!is_zero(r1)) {
    auto [q, r] = div_rem(r0, r1);
    r0 = std::exchange(r1, std::move(r));
    x0 = std::exchange(x1, x0 - q * x1);
    y0 = std::exchange(y1, y0 - q * y1);
  }
  auto [g, u] = EuclideanTraits<T>::canonical(r0);
  return {std::move(g), u * x0, u * y0};
}

template <EuclideanDomain T> T gcd(const T& a, const T& b) {
  T r0 = a, r1 = b;
  while (!is_zero(r1))
    r0 = std::exchange(r1, div_rem(r0, r1).second);
  return canonical(r0);
}

template <EuclideanDomain T> T lcm(const T& a, const T& b) {
  if (is_zero(a) || is_zero(b))
    return T(0);
  return canonical(exact_div(a, gcd(a, b)) * b);
}

template <class Range> auto gcd_of_list(const Range& values) {
  using T = std::remove_cvref_t<decltype(*std::begin(values))>;
  T g(0);
  for (const auto& v : values)
    g = gcd(g, T(v));
  return g;
}

/// x with x*a == 1 mod m; requires gcd(a, m) a unit.
template <EuclideanDomain T> T inverse_mod(const T& a, const T& m) {
  auto [g, x, y] = ext_gcd(a, m);
  if (!is_unit(g))
    throw std::domain_error("element is not invertible modulo m");
  return residue(x * EuclideanTraits<T>::unit_inverse(g), m);
}

template <class T> struct PrimePower {
  T prime;
  unsigned exponent = 0;

  T value() const {
    T v(1);
    for (unsigned i = 0; i < exponent; ++i)
      v *= prime;
    return v;
  }
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Factorization and primality exist for the integer instance only.
bool is_prime(const Integer& a);
std::vector<PrimePower<Integer>> factorize(const Integer& a);

template <EuclideanDomain T> bool is_prime(const T&) {
  throw UnsupportedOperation("primality test is only implemented for integers");
}

template <EuclideanDomain T> std::vector<PrimePower<T>> factorize(const T&) {
  throw UnsupportedOperation("factorization is only implemented for integers");
}

} // namespace dioph
