#pragma once

// Shape matrices and E10 vertex data exactly as tabulated in the literature,
// transcribed independently of the catalog so they can serve as a check on
// it. Indices follow the tabulated node order.

#include "kmvol/lie_core.hpp"
#include "kmvol/weyl_geometry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kmvol::tables {

/// Tabulated S for an untwisted algebra: A_n, B_n, C_n, D_n for every rank
/// (the tables are given by closed patterns), and G2, F4, E6, E7, E8.
std::optional<RationalMatrix> printed_shape(const AlgebraId& id);

/// (1/4) [[2, 1], [1, 1]], the B2 ordering of C2.
RationalMatrix printed_b2_variant();

struct PrintedVertex {
  Rational v_squared;
  RationalVector u;  // coefficients on e0, e1, ..., e7
};

std::vector<PrintedVertex> printed_e10_vertices();

struct E10Comparison {
  std::vector<Rational> computed_v_squared;  // 1 - S_jj from the computed S
  std::vector<Rational> printed_v_squared;
  std::vector<Rational> printed_u_squared;   // |u_j|^2 of the printed vectors
  std::vector<Rational> printed_table_diag;  // S_jj of the printed E8 table
  RationalMatrix printed_gram;               // u_i . u_j of the printed vectors
  std::vector<std::string> discrepancies;
};

/// Compares the computed E8 shape matrix with the printed vertex list and
/// the printed table; every inconsistency is listed, none is corrected.
E10Comparison compare_e10(const ShapeMatrix& computed_e8);

}  // namespace kmvol::tables
