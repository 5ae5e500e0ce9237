#pragma once

// Exact scalar types and the Eigen aliases used throughout the library.
// The GMP backend is used because it interoperates with Eigen's NumTraits
// through boost/multiprecision/eigen.hpp.

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Dense>

#include <string>
#include <string_view>

namespace kmvol {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = Matrix<Rational>;
using RationalVector = Vector<Rational>;
using IntMatrix = Matrix<int>;
using IntVector = Vector<int>;

/// Round-to-nearest-even conversion of an exact rational to binary64.
double to_double(const Rational& q);

/// Canonical "p/q" form; the denominator is always written, even when it is 1.
std::string to_string(const Rational& q);

/// Accepts "p/q", "p", and optional leading sign. Throws Error(ParseError).
Rational parse_rational(std::string_view text);

inline Rational make_rational(long num, long den = 1) {
  return Rational(Integer(num), Integer(den));
}

template <typename Derived>
Matrix<double> to_double(const Eigen::MatrixBase<Derived>& m) {
  Matrix<double> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = to_double(Rational(m(i, j)));
  return out;
}

template <typename Derived>
RationalMatrix to_rational(const Eigen::MatrixBase<Derived>& m) {
  RationalMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  return out;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
Rational determinant_exact(const RationalMatrix& m);

/// True iff every leading principal minor is strictly positive (Sylvester).
bool leading_minors_positive(const RationalMatrix& m);

}  // namespace kmvol
