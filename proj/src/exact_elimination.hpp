#pragma once

// Fraction-free elimination kernels over arbitrary-precision integers.

#include "kmvol/errors.hpp"
#include "kmvol/rational.hpp"

#include <utility>

namespace kmvol::detail {

// Returns scale * m as an integer matrix, where scale is the lcm of all
// denominators of m.
inline Matrix<Integer> clear_denominators(const RationalMatrix& m, Integer& scale) {
  scale = 1;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      scale = boost::multiprecision::lcm(scale, denominator(m(i, j)));
  Matrix<Integer> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out(i, j) = numerator(m(i, j)) * (scale / denominator(m(i, j)));
  return out;
}

inline Integer exact_div(const Integer& num, const Integer& den) {
  Integer q = num / den;
  if (q * den != num)
    throw Error(ErrorCode::InvalidArgument, "internal: inexact fraction-free division");
  return q;
}

inline Integer bareiss_determinant(Matrix<Integer> a) {
  const Eigen::Index n = a.rows();
  Integer prev = 1;
  int sign = 1;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      Eigen::Index p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.row(k).swap(a.row(p));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j)
        a(i, j) = exact_div(a(i, j) * a(k, k) - a(i, k) * a(k, j), prev);
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// Fraction-free Gauss-Jordan on [a | I]. Row operations keep the invariant
// [L | R] with L = R * a, and L ends diagonal, so row i of inverse(a) is
// R.row(i) / diag(i). Returns false when a is singular.
inline bool bareiss_gauss_jordan(const Matrix<Integer>& a, Matrix<Integer>& right,
                                 Vector<Integer>& diag) {
  const Eigen::Index n = a.rows();
  Matrix<Integer> w(n, 2 * n);
  w.leftCols(n) = a;
  w.rightCols(n).setZero();
  for (Eigen::Index i = 0; i < n; ++i) w(i, n + i) = 1;
  Integer prev = 1;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (w(k, k) == 0) {
      Eigen::Index p = k + 1;
      while (p < n && w(p, k) == 0) ++p;
      if (p == n) return false;
      w.row(k).swap(w.row(p));
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == k) continue;
      for (Eigen::Index j = 0; j < 2 * n; ++j) {
        if (j == k) continue;
        w(i, j) = exact_div(w(k, k) * w(i, j) - w(i, k) * w(k, j), prev);
      }
      w(i, k) = 0;
    }
    prev = w(k, k);
  }
  right = w.rightCols(n);
  diag = w.leftCols(n).diagonal();
  return true;
}

}  // namespace kmvol::detail
