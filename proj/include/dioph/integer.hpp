#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <string>

namespace dioph {

/// Arbitrary-precision integer. Expression templates are disabled so the type
/// behaves as a plain value inside Eigen expressions.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

inline std::string to_string(const Integer& a) { return a.str(); }

} // namespace dioph
