#include "kmvol/simplex_rules.hpp"
#include "kmvol/volume.hpp"

#include <doctest.h>

#include <random>

using namespace kmvol;

namespace {

Rational binomial(int b, int k) {
  Integer num = 1;
  Integer den = 1;
  for (int i = 0; i < k; ++i) {
    num *= b - i;
    den *= i + 1;
  }
  return Rational(num, den);
}

// int_0^1 t^a (1 - t)^b dt by expanding (1 - t)^b.
Rational beta_by_expansion(int a, int b) {
  Rational sum = 0;
  for (int k = 0; k <= b; ++k) {
    const Rational term = binomial(b, k) / Rational(a + k + 1);
    sum += (k % 2 == 0) ? term : Rational(-term);
  }
  return sum;
}

// int_{Delta_n} prod t_k^alpha_k (1 - sum t)^slack dt. Integrating one
// coordinate at a time over [0, c] with c = 1 - (remaining sum) turns
// (c - t)^m t^a into c^(a + m + 1) times a beta integral.
Rational monomial_by_iteration(const std::vector<int>& alpha, int slack = 0) {
  Rational result = 1;
  int carried = slack;
  for (const int a : alpha) {
    result *= beta_by_expansion(a, carried);
    carried += a + 1;
  }
  return result;
}

// Evaluates the monomial prod_k lambda_k^e_k at every rule point.
Rational rule_on_monomial(const SimplexRule<Rational>& rule, const std::vector<int>& e) {
  Rational sum = 0;
  for (Eigen::Index p = 0; p < rule.bary.cols(); ++p) {
    Rational term = rule.weights(p);
    for (Eigen::Index k = 0; k < rule.bary.rows(); ++k)
      for (int r = 0; r < e[static_cast<std::size_t>(k)]; ++r) term *= rule.bary(k, p);
    sum += term;
  }
  return sum;
}

// Average of the barycentric monomial prod lambda_k^e_k over the simplex,
// with lambda_0 = 1 - sum t.
Rational exact_average(int n, const std::vector<int>& e) {
  Integer nfact = 1;
  for (int k = 2; k <= n; ++k) nfact *= k;
  return Rational(nfact) * monomial_by_iteration(std::vector<int>(e.begin() + 1, e.end()), e[0]);
}

}  // namespace

TEST_SUITE("simplex_rules") {
  TEST_CASE("monomial integrals agree with iterated beta integrals") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> dim(1, 5);
    std::uniform_int_distribution<int> expo(0, 6);
    for (int trial = 0; trial < 60; ++trial) {
      const int n = dim(rng);
      IntVector alpha(n);
      std::vector<int> a(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k) a[static_cast<std::size_t>(k)] = alpha(k) = expo(rng);
      CHECK(simplex_monomial_integral(alpha) == monomial_by_iteration(a));
    }
    CHECK(simplex_monomial_integral(IntVector::Zero(3)) == make_rational(1, 6));
  }

  TEST_CASE("exact rule integrates to its degree and no further") {
    for (int n : {1, 2, 3, 4}) {
      for (int s : {0, 1, 2, 3}) {
        CAPTURE(n);
        CAPTURE(s);
        const auto rule = grundmann_moller<Rational>(n, s);
        CHECK(rule.weights.sum() == 1);
        // Barycentric monomials lambda_0^d and lambda_0^(d-1) lambda_1 up to the degree.
        for (int d = 0; d <= 2 * s + 1; ++d) {
          std::vector<int> e(static_cast<std::size_t>(n + 1), 0);
          e[0] = d;
          CHECK(rule_on_monomial(rule, e) == exact_average(n, e));
          if (d >= 1) {
            e[0] = d - 1;
            e[1] = 1;
            CHECK(rule_on_monomial(rule, e) == exact_average(n, e));
          }
        }
        std::vector<int> e(static_cast<std::size_t>(n + 1), 0);
        e[0] = 2 * s + 2;
        CHECK(rule_on_monomial(rule, e) != exact_average(n, e));
      }
    }
  }

  TEST_CASE("embedded pair") {
    for (int n : {2, 3, 5}) {
      for (int s : {1, 2, 4}) {
        const auto pair = grundmann_moller_pair<Rational>(n, s);
        const auto high = grundmann_moller<Rational>(n, s);
        const auto low = grundmann_moller<Rational>(n, s - 1);
        CHECK(pair.bary == high.bary);
        CHECK(pair.w_high == high.weights);
        CHECK(pair.w_low.sum() == 1);
        // The low rule of the pair must integrate exactly like the stand-alone rule.
        for (int d = 0; d <= 2 * s - 1; ++d) {
          std::vector<int> e(static_cast<std::size_t>(n + 1), 0);
          e[1] = d;
          SimplexRule<Rational> as_rule{n, 2 * s - 1, pair.bary, pair.w_low};
          CHECK(rule_on_monomial(as_rule, e) == rule_on_monomial(low, e));
        }
      }
    }
    CHECK_THROWS_AS(grundmann_moller_pair<double>(3, 0), Error);
    CHECK_THROWS_AS(grundmann_moller<double>(0, 2), Error);
  }

  TEST_CASE("double rule matches the exact rule") {
    const auto exact = grundmann_moller<Rational>(4, 3);
    const auto approx = grundmann_moller<double>(4, 3);
    CHECK((to_double(exact.bary) - approx.bary).cwiseAbs().maxCoeff() == 0.0);
    CHECK((to_double(exact.weights) - approx.weights).cwiseAbs().maxCoeff() == 0.0);
  }
}
