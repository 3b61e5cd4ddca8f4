#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <string>

namespace mbe {

// Exact field of coefficients. Always stored in lowest terms with a
// positive denominator (GMP canonicalizes every result).
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = Matrix<Rational>;
using RationalVector = Vector<Rational>;

bool is_integer(const Rational& q);

/// Integer value of `q`; throws InvariantBreach when `q` is not an integer
/// or does not fit in 64 bits.
long long to_integer(const Rational& q);

std::string to_string(const Rational& q);

}  // namespace mbe
