#include "kmvol/errors.hpp"
#include "kmvol/lobachevsky.hpp"
#include "kmvol/volume.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

using namespace kmvol;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

// vol(A1++) = (1/2) int_0^1 (1 - t^2/4)^(-1/2) dt = arcsin(1/2); partial sums
// of the arcsin Taylor series at x = 1/2.
std::vector<double> arcsin_partial_sums(int terms) {
  std::vector<double> out;
  double c = 1.0;  // (1/2)_k / k!
  double x = 0.5;  // (1/2)^(2k+1)
  double sum = 0.0;
  for (int k = 0; k < terms; ++k) {
    if (k > 0) {
      c *= (k - 0.5) / k;
      x *= 0.25;
    }
    sum += c * x / (2 * k + 1);
    out.push_back(sum);
  }
  return out;
}

}  // namespace

TEST_SUITE("volume") {
  TEST_CASE("integrand and moment examples") {
    const QForm a1 = make_qform(shape_of({Family::A, 1}));
    CHECK(a1.sqrt_det == doctest::Approx(0.5).epsilon(1e-16));
    CHECK(integrand(a1, Eigen::VectorXd::Zero(1)) == doctest::Approx(0.5).epsilon(1e-16));
    CHECK(integrand(a1, Eigen::VectorXd::Ones(1)) == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-15));

    const QForm c4 = make_qform(shape_of({Family::C, 4}));
    CHECK(c4.cusp_corners == std::vector<int>{3});
    CHECK(std::isinf(integrand(c4, Eigen::VectorXd::Unit(4, 3))));
    CHECK(std::isfinite(integrand(c4, 0.999 * Eigen::VectorXd::Unit(4, 3))));
    CHECK(code_of([&] { integrand(c4, Eigen::VectorXd::Zero(3)); }) == ErrorCode::DimensionMismatch);

    CHECK(simplex_monomial_integral((IntVector(2) << 1, 1).finished()) == make_rational(1, 24));
    CHECK(simplex_monomial_integral((IntVector(1) << 3).finished()) == make_rational(1, 4));
    CHECK(code_of([] { simplex_monomial_integral((IntVector(1) << -1).finished()); }) ==
          ErrorCode::InvalidArgument);
  }

  TEST_CASE("series partial sums follow the arcsin series for A1") {
    const auto sums = series_partial_sums(shape_of({Family::A, 1}), 30);
    const auto oracle = arcsin_partial_sums(31);
    for (std::size_t k = 0; k < sums.size(); ++k) CHECK(std::abs(sums[k] - oracle[k]) < 1e-15);
    const auto est = volume_series(shape_of({Family::A, 1}), 200, 1e-14);
    CHECK(est.rigorous);
    CHECK(est.converged);
    CHECK(std::abs(est.value - std::numbers::pi / 6) <= est.error_bound + 1e-15);
  }

  TEST_CASE("series partial sums increase") {
    for (const AlgebraId id : {AlgebraId{Family::A, 3}, AlgebraId{Family::C, 3}, AlgebraId{Family::C, 4}}) {
      const auto sums = series_partial_sums(shape_of(id), 40);
      for (std::size_t k = 1; k < sums.size(); ++k) CHECK(sums[k] > sums[k - 1]);
    }
  }

  TEST_CASE("series errors") {
    CHECK(code_of([] { volume_series(shape_of({Family::A, 5}), 10, 1e-8); }) == ErrorCode::DimensionCap);
    CHECK(code_of([] { volume_series(shape_of({Family::A, 8}), 10, 1e-8); }) == ErrorCode::NotHyperbolic);
    CHECK(code_of([] { volume_series(shape_of({Family::A, 3}), 2, 1e-14); }) == ErrorCode::BudgetExhausted);
    CHECK(code_of([] { volume_series(shape_of({Family::A, 3}), -1, 1e-8); }) == ErrorCode::InvalidArgument);
  }

  TEST_CASE("adaptive matches known volumes") {
    const auto a1 = volume_adaptive(shape_of({Family::A, 1}), 1e-13, 10000);
    CHECK(a1.converged);
    CHECK(std::abs(a1.value - std::numbers::pi / 6) < 1e-12);
    const auto a2 = volume_adaptive(shape_of({Family::A, 2}), 1e-12, 100000);
    const auto g2 = volume_adaptive(shape_of({Family::G, 2}), 1e-12, 100000);
    CHECK(std::abs(a2.value - lobachevsky(std::numbers::pi / 3) / 4) < 1e-11);
    CHECK(std::abs(g2.value - a2.value / 2) < 1e-11);
  }

  TEST_CASE("converged adaptive estimates stay within tolerance") {
    for (const AlgebraId id : {AlgebraId{Family::A, 3}, AlgebraId{Family::B, 3}, AlgebraId{Family::C, 3},
                               AlgebraId{Family::G, 2}}) {
      CAPTURE(name(id));
      const ShapeMatrix s = shape_of(id);
      const auto reference = volume_adaptive(s, 1e-14, 400000);
      for (double tol : {1e-5, 1e-7, 1e-9}) {
        const auto est = volume_adaptive(s, tol, 400000);
        REQUIRE(est.converged);
        CHECK(est.error_bound <= tol);
        CHECK(std::abs(est.value - reference.value) <= tol);
      }
    }
  }

  TEST_CASE("adaptive budget and options") {
    const ShapeMatrix c4 = shape_of({Family::C, 4});
    const auto est = volume_adaptive(c4, 1e-15, 3);
    CHECK_FALSE(est.converged);
    CHECK(est.error_bound > 1e-15);
    CHECK(code_of([&] { volume_adaptive(c4, 0.0, 100); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([&] { volume_adaptive(c4, 1e-8, 0); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { volume_adaptive(shape_of({Family::A, 8}), 1e-8, 100); }) == ErrorCode::NotHyperbolic);

    AdaptiveOptions rel;
    rel.tol = 1e-300;
    rel.rel_tol = 1e-6;
    const auto r = volume_adaptive(c4, rel);
    CHECK(r.converged);
    CHECK(r.error_bound <= 1e-6 * r.value);
  }

  TEST_CASE("adaptive result does not depend on the thread count") {
    AdaptiveOptions opts;
    opts.tol = 1e-11;
    const ShapeMatrix s = shape_of({Family::D, 5});
    const auto one = volume_adaptive(s, opts);
    opts.threads = 3;
    const auto three = volume_adaptive(s, opts);
    CHECK(one.value == three.value);
    CHECK(one.error_bound == three.error_bound);
    CHECK(one.work == three.work);
  }

  TEST_CASE("volume is invariant under relabeling and decreases when S shrinks") {
    std::mt19937 rng(3);
    for (const AlgebraId id : {AlgebraId{Family::B, 3}, AlgebraId{Family::F, 4}, AlgebraId{Family::C, 4}}) {
      CAPTURE(name(id));
      const ShapeMatrix s = shape_of(id);
      std::vector<int> p(static_cast<std::size_t>(s.n()));
      std::iota(p.begin(), p.end(), 0);
      std::shuffle(p.begin(), p.end(), rng);
      const double tol = 1e-10;
      const double base = volume_adaptive(s, tol, 400000).value;
      const double relabeled = volume_adaptive(permute(s, p), tol, 400000).value;
      CHECK(std::abs(base - relabeled) <= 2 * tol);
      // With T = 0.9 S the integrand is smaller pointwise up to the
      // sqrt(det) factor, which is smaller as well.
      const ShapeMatrix shrunk = make_shape(RationalMatrix(s.S * make_rational(9, 10)));
      CHECK(volume_adaptive(shrunk, tol, 400000).value < base);
    }
  }

  TEST_CASE("Monte Carlo") {
    const ShapeMatrix a2 = shape_of({Family::A, 2});
    const auto mc = volume_montecarlo(a2, 1000000, 11);
    const double exact = lobachevsky(std::numbers::pi / 3) / 4;
    CHECK(std::abs(mc.value - exact) < 3 * mc.error_bound);
    CHECK(mc.work == 1000000);
    CHECK_FALSE(mc.rigorous);

    const auto again = volume_montecarlo(a2, 300000, 11, 1);
    const auto threaded = volume_montecarlo(a2, 300000, 11, 4);
    CHECK(again.value == threaded.value);
    CHECK(again.error_bound == threaded.error_bound);
    CHECK(volume_montecarlo(a2, 300000, 12).value != again.value);

    CHECK(code_of([&] { volume_montecarlo(a2, 0, 1); }) == ErrorCode::InvalidSampleCount);
    CHECK(code_of([] { volume_montecarlo(shape_of({Family::A, 8}), 10, 1); }) == ErrorCode::NotHyperbolic);
  }

  TEST_CASE("quadratic form on the simplex stays in [0, qmax]") {
    std::mt19937_64 rng(8);
    std::exponential_distribution<double> expo(1.0);
    for (const AlgebraId id : {AlgebraId{Family::E, 8}, AlgebraId{Family::C, 4}, AlgebraId{Family::D, 6}}) {
      const QForm q = make_qform(shape_of(id));
      const double qmax = to_double(q.qmax);
      for (int trial = 0; trial < 2000; ++trial) {
        // Uniform point of the simplex from normalized exponentials (one slack coordinate).
        Eigen::VectorXd e(q.n() + 1);
        for (Eigen::Index k = 0; k <= q.n(); ++k) e(k) = expo(rng);
        const Eigen::VectorXd t = e.head(q.n()) / e.sum();
        const double value = quadratic_form(q.S, t);
        CHECK(value >= 0.0);
        CHECK(value <= qmax * (1 + 1e-15));
      }
    }
  }
}
