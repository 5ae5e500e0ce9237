#include "kmvol/errors.hpp"
#include "kmvol/rational.hpp"

#include <doctest.h>

#include <random>

using namespace kmvol;

namespace {

// Cofactor expansion along the first row.
Rational laplace_det(const RationalMatrix& m) {
  const Eigen::Index n = m.rows();
  if (n == 1) return m(0, 0);
  Rational det = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    RationalMatrix minor(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r)
      for (Eigen::Index c = 0, k = 0; c < n; ++c)
        if (c != j) minor(r - 1, k++) = m(r, c);
    const Rational term = m(0, j) * laplace_det(minor);
    det += (j % 2 == 0) ? term : Rational(-term);
  }
  return det;
}

}  // namespace

TEST_SUITE("rational") {
  TEST_CASE("p/q formatting and parsing round-trip") {
    CHECK(to_string(make_rational(3, 4)) == "3/4");
    CHECK(to_string(make_rational(-2, 6)) == "-1/3");
    CHECK(to_string(make_rational(5)) == "5/1");
    for (const char* s : {"7/9", "-1/3", "0/1", "123456789012345678901234567891/2"})
      CHECK(to_string(parse_rational(s)) == s);
    CHECK(parse_rational("4") == make_rational(4));
    CHECK(parse_rational("+2/4") == make_rational(1, 2));
  }

  TEST_CASE("malformed rationals are rejected") {
    for (const char* s : {"", "1/0", "abc", "1/2/3", "1.5", "/3"}) {
      CAPTURE(s);
      CHECK_THROWS_AS(parse_rational(s), Error);
    }
  }

  TEST_CASE("to_double rounds correctly") {
    // Integers below 2^53 convert exactly, so one IEEE division is a
    // correctly rounded oracle.
    std::mt19937_64 gen(1);
    std::uniform_int_distribution<long> num(-(1L << 40), 1L << 40);
    std::uniform_int_distribution<long> den(1, 1L << 40);
    for (int k = 0; k < 2000; ++k) {
      const long p = num(gen);
      const long q = den(gen);
      CHECK(to_double(make_rational(p, q)) == static_cast<double>(p) / static_cast<double>(q));
    }
    const Rational tiny(Integer(1), Integer(1) << 1080);
    CHECK(to_double(tiny) == 0.0);
    const Rational third_of_huge((Integer(1) << 200) + 1, Integer(3));
    CHECK(to_double(third_of_huge) == std::ldexp(1.0, 200) / 3.0);
  }

  TEST_CASE("Bareiss determinant matches cofactor expansion") {
    std::mt19937_64 gen(2);
    std::uniform_int_distribution<int> entry(-6, 6);
    for (int trial = 0; trial < 50; ++trial) {
      const int n = 1 + trial % 6;
      RationalMatrix m(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = make_rational(entry(gen), 1 + (i + j) % 3);
      CHECK(determinant_exact(m) == laplace_det(m));
    }
  }

  TEST_CASE("Sylvester criterion") {
    RationalMatrix pd(2, 2);
    pd << make_rational(2), make_rational(-1), make_rational(-1), make_rational(2);
    CHECK(leading_minors_positive(pd));
    RationalMatrix semi(2, 2);
    semi << make_rational(2), make_rational(-2), make_rational(-2), make_rational(2);
    CHECK_FALSE(leading_minors_positive(semi));
  }
}
