#include "kmvol/printed_tables.hpp"

#include <algorithm>
#include <array>

namespace kmvol::tables {

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

RationalMatrix from_rows(std::initializer_list<std::initializer_list<Rational>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  RationalMatrix m(n, n);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (const auto& x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

// Lower triangle given, mirrored into the upper one.
RationalMatrix symmetric_from_lower(std::initializer_list<std::initializer_list<Rational>> rows) {
  RationalMatrix m = RationalMatrix::Zero(static_cast<Eigen::Index>(rows.size()),
                                          static_cast<Eigen::Index>(rows.size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (const auto& x : row) {
      m(i, j) = x;
      m(j, i) = x;
      ++j;
    }
    ++i;
  }
  return m;
}

RationalMatrix pattern_a(int n) {
  RationalMatrix m(n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      m(i - 1, j - 1) = q(std::min(i, j) * (n + 1 - std::max(i, j)), 2 * (n + 1));
  return m;
}

// B_n and D_n share the bordered layout: 1/2 corner, 1/4 border.
RationalMatrix pattern_b(int n) {
  RationalMatrix m(n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == 1 && j == 1) m(0, 0) = q(1, 2);
      else if (i == 1 || j == 1) m(i - 1, j - 1) = q(1, 4);
      else m(i - 1, j - 1) = q(std::min(i, j), 8);
    }
  return m;
}

RationalMatrix pattern_c(int n) {
  RationalMatrix m(n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) m(i - 1, j - 1) = q(std::min(i, j), 4);
  return m;
}

RationalMatrix pattern_d(int n) {
  RationalMatrix m = pattern_b(n);
  // The two spinor nodes: n/8 on their diagonal, (n-2)/8 between them.
  m(n - 2, n - 2) = q(n, 8);
  m(n - 1, n - 1) = q(n, 8);
  m(n - 2, n - 1) = m(n - 1, n - 2) = q(n - 2, 8);
  return m;
}

}  // namespace

std::optional<RationalMatrix> printed_shape(const AlgebraId& id) {
  if (id.twist != Twist::untwisted) return std::nullopt;
  const int n = id.rank;
  switch (id.family) {
    case Family::A:
      if (n == 1) return from_rows({{q(1, 4)}});
      if (n == 2) return from_rows({{q(1, 3), q(1, 6)}, {q(1, 6), q(1, 3)}});
      return pattern_a(n);
    case Family::B:
      return pattern_b(n);
    case Family::C:
      if (n == 2) return from_rows({{q(1, 4), q(1, 4)}, {q(1, 4), q(1, 2)}});
      return pattern_c(n);
    case Family::D:
      return pattern_d(n);
    case Family::G:
      return from_rows({{q(1, 4), q(1, 4)}, {q(1, 4), q(1, 3)}});
    case Family::F:
      return symmetric_from_lower({{q(1, 4)},
                                   {q(1, 4), q(1, 3)},
                                   {q(1, 4), q(1, 3), q(3, 8)},
                                   {q(1, 4), q(1, 3), q(3, 8), q(1, 2)}});
    case Family::E:
      if (n == 6)
        return from_rows({{q(2, 3), q(5, 12), q(1, 3), q(1, 3), q(1, 3), q(1, 4)},
                          {q(5, 12), q(5, 12), q(1, 3), q(1, 3), q(1, 3), q(1, 4)},
                          {q(1, 3), q(1, 3), q(1, 3), q(1, 3), q(1, 3), q(1, 4)},
                          {q(1, 3), q(1, 3), q(1, 3), q(5, 12), q(5, 12), q(1, 4)},
                          {q(1, 3), q(1, 3), q(1, 3), q(5, 12), q(2, 3), q(1, 4)},
                          {q(1, 4), q(1, 4), q(1, 4), q(1, 4), q(1, 4), q(1, 4)}});
      if (n == 7)
        return symmetric_from_lower(
            {{q(1, 4)},
             {q(1, 4), q(1, 3)},
             {q(1, 4), q(1, 3), q(3, 8)},
             {q(1, 4), q(1, 3), q(3, 8), q(5, 12)},
             {q(1, 4), q(1, 3), q(3, 8), q(5, 12), q(1, 2)},
             {q(1, 4), q(1, 3), q(3, 8), q(5, 12), q(1, 2), q(3, 4)},
             {q(1, 4), q(1, 3), q(3, 8), q(3, 8), q(3, 8), q(3, 8), q(7, 16)}});
      return symmetric_from_lower(
          {{q(1, 4)},
           {q(1, 4), q(1, 3)},
           {q(1, 4), q(1, 3), q(3, 8)},
           {q(1, 4), q(1, 3), q(3, 8), q(2, 5)},
           {q(1, 4), q(1, 3), q(3, 8), q(2, 5), q(5, 12)},
           {q(1, 4), q(1, 3), q(3, 8), q(2, 5), q(5, 12), q(7, 16)},
           {q(1, 4), q(1, 3), q(3, 8), q(2, 5), q(5, 12), q(7, 16), q(1, 2)},
           {q(1, 4), q(1, 3), q(3, 8), q(2, 5), q(5, 12), q(5, 12), q(5, 12), q(2, 9)}});
  }
  return std::nullopt;
}

RationalMatrix printed_b2_variant() {
  return from_rows({{q(1, 2), q(1, 4)}, {q(1, 4), q(1, 4)}});
}

std::vector<PrintedVertex> printed_e10_vertices() {
  // u_j = (1/2) e0 + c_j (sum of k_i e_i); listed as (v^2, c_j, k_1..k_7).
  struct Row {
    Rational v2;
    Rational c;
    std::array<int, 7> k;
  };
  const std::vector<Row> rows = {
      {q(3, 4), q(0), {0, 0, 0, 0, 0, 0, 0}},
      {q(2, 3), q(1, 6), {1, 0, 0, 0, 1, 1, 0}},
      {q(5, 8), q(1, 4), {0, 0, 0, 0, 1, 1, 0}},
      {q(3, 5), q(1, 10), {0, 1, 0, 0, 3, 2, -1}},
      {q(1, 6), q(1, 6), {0, 0, 0, 0, 2, 1, -1}},
      {q(9, 16), q(1, 8), {0, 0, 1, 0, 3, 1, -1}},
      {q(1, 2), q(1, 2), {0, 0, 0, 0, 1, 0, 0}},
      {q(5, 9), q(1, 6), {0, 0, 0, 1, 2, 1, -1}},
  };
  std::vector<PrintedVertex> out;
  for (const Row& r : rows) {
    PrintedVertex p;
    p.v_squared = r.v2;
    p.u = RationalVector::Zero(8);
    p.u(0) = q(1, 2);
    for (int i = 0; i < 7; ++i) p.u(i + 1) = r.c * r.k[static_cast<std::size_t>(i)];
    out.push_back(std::move(p));
  }
  return out;
}

E10Comparison compare_e10(const ShapeMatrix& computed_e8) {
  const auto printed = printed_e10_vertices();
  const RationalMatrix table = *printed_shape(AlgebraId{Family::E, 8});
  const auto n = static_cast<Eigen::Index>(printed.size());
  E10Comparison c;
  c.printed_gram.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      c.printed_gram(i, j) = printed[i].u.dot(printed[j].u);

  auto label = [](Eigen::Index j) { return "vertex " + std::to_string(j + 1) + ": "; };
  for (Eigen::Index j = 0; j < n; ++j) {
    const Rational computed = 1 - computed_e8.S(j, j);
    const Rational& v2 = printed[j].v_squared;
    const Rational& u2 = c.printed_gram(j, j);
    c.computed_v_squared.push_back(computed);
    c.printed_v_squared.push_back(v2);
    c.printed_u_squared.push_back(u2);
    c.printed_table_diag.push_back(table(j, j));
    if (v2 + u2 != 1)
      c.discrepancies.push_back(label(j) + "printed v^2 + |u|^2 = " + to_string(v2 + u2) +
                                ", hemisphere requires v^2 = " + to_string(1 - u2));
    if (v2 != computed)
      c.discrepancies.push_back(label(j) + "printed v^2 = " + to_string(v2) +
                                ", computed 1 - S_jj = " + to_string(computed));
    if (u2 != table(j, j))
      c.discrepancies.push_back(label(j) + "printed |u|^2 = " + to_string(u2) +
                                ", printed table S_jj = " + to_string(table(j, j)));
    if (table(j, j) != computed_e8.S(j, j))
      c.discrepancies.push_back(label(j) + "printed table S_jj = " + to_string(table(j, j)) +
                                ", computed S_jj = " + to_string(computed_e8.S(j, j)));
  }
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < i; ++j)
      if (c.printed_gram(i, j) != computed_e8.S(i, j))
        c.discrepancies.push_back("pair (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) +
                                  "): printed u_i.u_j = " + to_string(c.printed_gram(i, j)) +
                                  ", computed S_ij = " + to_string(computed_e8.S(i, j)));
  return c;
}

}  // namespace kmvol::tables
