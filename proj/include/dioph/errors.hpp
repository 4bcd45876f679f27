#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dioph {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The matrix has rank 0 or full column rank; the nullspace is R^n or 0.
class RankOutOfScope : public Error {
public:
  RankOutOfScope(std::ptrdiff_t rank, std::ptrdiff_t cols)
      : Error("rank " + std::to_string(rank) + " is outside 0 < r < " +
              std::to_string(cols)),
        rank_(rank), cols_(cols) {}

  std::ptrdiff_t rank() const noexcept { return rank_; }
  std::ptrdiff_t cols() const noexcept { return cols_; }
  /// True when every vector of R^n solves the system (rank 0).
  bool nullspace_is_everything() const noexcept { return rank_ == 0; }

private:
  std::ptrdiff_t rank_;
  std::ptrdiff_t cols_;
};

/// A computed object violated an invariant that the algorithms guarantee.
class InternalConsistencyError : public Error {
public:
  using Error::Error;
};

/// No coefficient vector of the requested order exists in the quotient.
class NotLargestFactor : public Error {
public:
  using Error::Error;
};

/// A prime was required and the argument is not prime.
class NotPrime : public Error {
public:
  using Error::Error;
};

/// Operation not available for this ring instance.
class UnsupportedOperation : public Error {
public:
  using Error::Error;
};

/// Sublattice inclusion required by a quotient computation does not hold.
class NotIncluded : public Error {
public:
  using Error::Error;
};

class BruteForceBoundExceeded : public Error {
public:
  using Error::Error;
};

/// Malformed matrix input.
class ParseError : public Error {
public:
  using Error::Error;
};

} // namespace dioph
