#include "kmvol/rational.hpp"

#include "kmvol/errors.hpp"
#include "exact_elimination.hpp"

#include <cmath>
#include <cstdint>

namespace kmvol {

double to_double(const Rational& q) {
  using boost::multiprecision::msb;
  if (q == 0) return 0.0;
  const bool negative = q < 0;
  const Integer a = abs(numerator(q));
  const Integer b = denominator(q);

  // Scale so the integer quotient carries 64 or 65 significant bits.
  const long e = 64 - (static_cast<long>(msb(a)) - static_cast<long>(msb(b)));
  Integer quotient;
  Integer remainder;
  if (e >= 0) {
    Integer scaled = a << static_cast<unsigned>(e);
    quotient = scaled / b;
    remainder = scaled - quotient * b;
  } else {
    Integer scaled_den = b << static_cast<unsigned>(-e);
    quotient = a / scaled_den;
    remainder = a - quotient * scaled_den;
  }
  const long top = static_cast<long>(msb(quotient));
  const unsigned drop = static_cast<unsigned>(top - 52);
  Integer mantissa_big = quotient >> drop;
  const Integer rest = quotient - (mantissa_big << drop);
  const Integer half = Integer(1) << (drop - 1);
  const bool sticky = remainder != 0;
  auto mantissa = mantissa_big.convert_to<std::uint64_t>();
  if (rest > half || (rest == half && (sticky || (mantissa & 1U)))) ++mantissa;
  const double magnitude =
      std::ldexp(static_cast<double>(mantissa), static_cast<int>(static_cast<long>(drop) - e));
  return negative ? -magnitude : magnitude;
}

std::string to_string(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

Rational parse_rational(std::string_view text) {
  auto fail = [&](std::size_t pos) -> Rational {
    throw Error(ErrorCode::ParseError, "invalid rational '" + std::string(text) + "'", pos);
  };
  if (text.empty()) return fail(0);
  const auto slash = text.find('/');
  auto parse_int = [&](std::string_view part, std::size_t offset) -> Integer {
    std::size_t i = 0;
    if (!part.empty() && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i == part.size()) fail(offset + i);
    for (std::size_t k = i; k < part.size(); ++k)
      if (part[k] < '0' || part[k] > '9') fail(offset + k);
    return Integer(std::string(part[0] == '+' ? part.substr(1) : part));
  };
  if (slash == std::string_view::npos) return Rational(parse_int(text, 0));
  const Integer num = parse_int(text.substr(0, slash), 0);
  const Integer den = parse_int(text.substr(slash + 1), slash + 1);
  if (den == 0) return fail(slash + 1);
  return Rational(num, den);
}

Rational determinant_exact(const RationalMatrix& m) {
  if (m.rows() != m.cols())
    throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  if (m.rows() == 0) return Rational(1);
  Integer scale;
  Matrix<Integer> work = detail::clear_denominators(m, scale);
  const Integer det = detail::bareiss_determinant(work);
  // det(scale * M) = scale^n det(M)
  Integer scale_pow = 1;
  for (Eigen::Index i = 0; i < m.rows(); ++i) scale_pow *= scale;
  return Rational(det, scale_pow);
}

bool leading_minors_positive(const RationalMatrix& m) {
  for (Eigen::Index k = 1; k <= m.rows(); ++k) {
    if (determinant_exact(m.topLeftCorner(k, k)) <= 0) return false;
  }
  return true;
}

}  // namespace kmvol
