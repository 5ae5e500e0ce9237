#include "kmvol/errors.hpp"
#include "kmvol/lie_core.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <deque>
#include <set>

using namespace kmvol;
using testing_support::catalog_ids;

namespace {

using Root = std::vector<int>;

// Positive roots as the Weyl orbit of the simple roots, closed under the
// simple reflections s_i(b) = b - <b, a_i^v> a_i.
std::set<Root> reflection_closure(const IntMatrix& a) {
  const int n = static_cast<int>(a.rows());
  std::set<Root> seen;
  std::deque<Root> queue;
  for (int i = 0; i < n; ++i) {
    Root e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(i)] = 1;
    seen.insert(e);
    queue.push_back(e);
  }
  while (!queue.empty()) {
    const Root b = queue.front();
    queue.pop_front();
    for (int i = 0; i < n; ++i) {
      int pairing = 0;
      for (int j = 0; j < n; ++j) pairing += b[static_cast<std::size_t>(j)] * a(j, i);
      Root r = b;
      r[static_cast<std::size_t>(i)] -= pairing;
      if (seen.insert(r).second) queue.push_back(r);
    }
  }
  std::set<Root> positive;
  for (const auto& r : seen)
    if (std::all_of(r.begin(), r.end(), [](int x) { return x >= 0; })) positive.insert(r);
  return positive;
}

std::size_t expected_root_count(const AlgebraId& id) {
  const std::size_t n = static_cast<std::size_t>(id.rank);
  switch (id.family) {
    case Family::A: return n * (n + 1) / 2;
    case Family::B:
    case Family::C: return n * n;
    case Family::D: return n * (n - 1);
    case Family::E: return n == 6 ? 36 : n == 7 ? 63 : 120;
    case Family::F: return 24;
    case Family::G: return 6;
  }
  return 0;
}

}  // namespace

TEST_SUITE("lie_core") {
  TEST_CASE("catalog entries obey the Cartan matrix rules") {
    for (const auto& id : catalog_ids(10)) {
      CAPTURE(name(id));
      const auto d = catalog_entry(id);
      const IntMatrix& a = d.cartan;
      REQUIRE(a.rows() == id.rank);
      for (int i = 0; i < id.rank; ++i) {
        CHECK(a(i, i) == 2);
        CHECK(d.labels(i) > 0);
        for (int j = 0; j < id.rank; ++j)
          if (i != j) {
            CHECK(a(i, j) <= 0);
            CHECK((a(i, j) == 0) == (a(j, i) == 0));
          }
      }
      CHECK(d.alias_of.has_value() == (id.twist == Twist::twisted));
    }
  }

  TEST_CASE("symmetrization and the theta^2 = 1 normalization") {
    for (const auto& id : catalog_ids(10)) {
      CAPTURE(name(id));
      const auto cd = symmetrize_and_normalize(catalog_entry(id));
      const auto n = cd.B.rows();
      const RationalMatrix a = cd.datum.cartan.cast<Rational>();
      RationalMatrix b = a * cd.norms.asDiagonal();
      CHECK(b == cd.B);
      CHECK(cd.B == cd.B.transpose());
      CHECK(cd.B * cd.Binv == RationalMatrix::Identity(n, n));
      const RationalVector m = cd.datum.labels.cast<Rational>();
      const Rational theta2 = Rational(m.dot(cd.B * m)) / 2;
      CHECK(theta2 == 1);
      for (Eigen::Index j = 0; j < n; ++j) CHECK(cd.nvec(j) == m(j) * cd.norms(j));
    }
  }

  TEST_CASE("symmetrizer satisfies A(i,j) d_j = A(j,i) d_i") {
    for (const auto& id : catalog_ids(8)) {
      CAPTURE(name(id));
      const IntMatrix a = catalog_entry(id).cartan;
      const RationalVector d = symmetrizer(a);
      CHECK(d(0) == 1);
      for (int i = 0; i < id.rank; ++i)
        for (int j = 0; j < id.rank; ++j) CHECK(Rational(a(i, j) * d(j)) == Rational(a(j, i) * d(i)));
    }
  }

  TEST_CASE("positive roots agree with the reflection closure") {
    for (const auto& id : catalog_ids(8, false)) {
      CAPTURE(name(id));
      const IntMatrix a = catalog_entry(id).cartan;
      const RootList roots = enumerate_positive_roots(a);
      std::set<Root> listed;
      for (const auto& r : roots.roots) listed.insert(Root(r.data(), r.data() + r.size()));
      CHECK(listed.size() == roots.size());
      CHECK(listed == reflection_closure(a));
      CHECK(roots.size() == expected_root_count(id));
      for (std::size_t k = 0; k < roots.size(); ++k) {
        CHECK(roots.heights(static_cast<Eigen::Index>(k)) == roots.roots[k].sum());
        if (k > 0) CHECK(roots.heights(static_cast<Eigen::Index>(k - 1)) <= roots.heights(static_cast<Eigen::Index>(k)));
      }
    }
  }

  TEST_CASE("labels are the highest-root marks except for the C series") {
    for (const auto& id : catalog_ids(8, false)) {
      CAPTURE(name(id));
      const auto d = catalog_entry(id);
      const IntVector marks = highest_root_marks(d.cartan);
      if (id.family == Family::C) {
        // The C entries carry unit labels on the B-type matrix; both choices
        // give the same shape matrix.
        CHECK(d.labels == IntVector::Ones(id.rank));
        CHECK(marks(0) == 1);
        for (int i = 1; i < id.rank; ++i) CHECK(marks(i) == 2);
      } else {
        CHECK(marks == d.labels);
      }
    }
    CHECK(*catalog_entry({Family::F, 4}).printed_labels == (IntVector(4) << 2, 3, 2, 1).finished());
  }

  TEST_CASE("finite-type and shape errors") {
    IntMatrix affine(2, 2);
    affine << 2, -2, -2, 2;
    CHECK_THROWS_AS(enumerate_positive_roots(affine), Error);
    try {
      enumerate_positive_roots(affine);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotFiniteType);
    }

    IntMatrix lopsided(2, 2);
    lopsided << 2, -1, 0, 2;
    try {
      make_datum({Family::A, 2}, lopsided, IntVector::Ones(2));
      FAIL("expected NotSymmetrizable");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotSymmetrizable);
    }

    IntMatrix cyclic(3, 3);
    cyclic << 2, -1, -1, -2, 2, -1, -1, -1, 2;
    try {
      symmetrizer(cyclic);
      FAIL("expected NotSymmetrizable");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotSymmetrizable);
    }

    RationalMatrix singular(2, 2);
    singular << make_rational(1), make_rational(2), make_rational(2), make_rational(4);
    try {
      invert_exact(singular);
      FAIL("expected SingularMatrix");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SingularMatrix);
    }
  }

  TEST_CASE("validation and names") {
    auto code_of = [](const AlgebraId& id) {
      try {
        validate(id);
      } catch (const Error& e) {
        return e.code();
      }
      return ErrorCode::InvalidArgument;
    };
    CHECK(code_of({Family::B, 2}) == ErrorCode::UnknownAlgebra);
    CHECK(code_of({Family::E, 9}) == ErrorCode::UnknownAlgebra);
    CHECK(code_of({Family::A, 3, Twist::twisted}) == ErrorCode::TwistUnavailable);
    CHECK(name({Family::E, 8}) == "E8++");
    CHECK(name({Family::B, 4, Twist::twisted}) == "B4(2)++");
    CHECK(name({Family::C, 3, Twist::untwisted, false}) == "C3");
  }

  TEST_CASE("user catalog overrides") {
    const auto overrides = CatalogOverrides::parse(
        "# G2 with the nodes swapped\n"
        "G 2 untwisted  2 -1 -3 2   3 2\n"
        "\n");
    CHECK(overrides.size() == 1);
    const auto d = overrides.entry({Family::G, 2});
    CHECK(d.cartan(1, 0) == -3);
    CHECK(d.labels(0) == 3);
    try {
      CatalogOverrides::parse("A 2 untwisted 2 -1\n");
      FAIL("expected ParseError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
      CHECK(e.position() == 0u);
    }
    CHECK_THROWS_AS(CatalogOverrides::parse("H 2 untwisted 2 -1 -1 2 1 1\n"), Error);
  }
}
