#pragma once

#include "dioph/ring.hpp"

#include <Eigen/Core>

#include <ostream>
#include <stdexcept>

namespace dioph {

/// Element of the fraction field of T, always in lowest terms with a
/// canonical denominator.
template <EuclideanDomain T> class Fraction {
public:
  Fraction() : num_(0), den_(1) {}
  Fraction(T n) : num_(std::move(n)), den_(1) {} // NOLINT: implicit embedding of R in F
  Fraction(int n) requires(!std::same_as<T, int>) : num_(n), den_(1) {} // NOLINT
  Fraction(T n, T d) : num_(std::move(n)), den_(std::move(d)) {
    if (dioph::is_zero(den_))
      throw std::domain_error("fraction with zero denominator");
    normalize();
  }

  const T& numerator() const noexcept { return num_; }
  const T& denominator() const noexcept { return den_; }
  bool is_zero() const { return dioph::is_zero(num_); }
  bool is_integral() const { return dioph::is_unit(den_); }

  friend Fraction operator+(const Fraction& a, const Fraction& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend Fraction operator-(const Fraction& a, const Fraction& b) {
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
  }
  friend Fraction operator*(const Fraction& a, const Fraction& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend Fraction operator/(const Fraction& a, const Fraction& b) {
    if (b.is_zero())
      throw std::domain_error("division by zero fraction");
    return {a.num_ * b.den_, a.den_ * b.num_};
  }
  Fraction operator-() const { return Fraction(-num_, den_, Normalized{}); }

  Fraction& operator+=(const Fraction& b) { return *this = *this + b; }
  Fraction& operator-=(const Fraction& b) { return *this = *this - b; }
  Fraction& operator*=(const Fraction& b) { return *this = *this * b; }
  Fraction& operator/=(const Fraction& b) { return *this = *this / b; }

  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Fraction& a) {
    os << a.num_;
    if (a.den_ != T(1))
      os << '/' << a.den_;
    return os;
  }

private:
  struct Normalized {};
  Fraction(T n, T d, Normalized) : num_(std::move(n)), den_(std::move(d)) {}

  void normalize() {
    T g = gcd(num_, den_);
    num_ = exact_div(num_, g);
    den_ = exact_div(den_, g);
    auto [c, u] = EuclideanTraits<T>::canonical(den_);
    den_ = std::move(c);
    num_ = num_ * u;
  }

  T num_;
  T den_;
};

} // namespace dioph

namespace Eigen {

template <class T> struct NumTraits<dioph::Fraction<T>> : GenericNumTraits<dioph::Fraction<T>> {
  using Real = dioph::Fraction<T>;
  using NonInteger = dioph::Fraction<T>;
  using Literal = dioph::Fraction<T>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 16
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

} // namespace Eigen
