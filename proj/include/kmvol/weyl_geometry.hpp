#pragma once

// Shape matrix of the fundamental domain, hyperbolicity classification and
// the vertex embedding on the unit hemisphere of the upper half space.

#include "kmvol/lie_core.hpp"
#include "kmvol/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kmvol {

struct ShapeMatrix {
  RationalMatrix S;
  Rational detS;

  Eigen::Index n() const { return S.rows(); }
};

/// Wraps an exact matrix; throws DimensionMismatch unless square and
/// InvalidArgument unless symmetric.
ShapeMatrix make_shape(RationalMatrix S);

/// Positive definite with every entry strictly positive.
bool has_shape_invariants(const ShapeMatrix& s);

struct WeightGram {
  RationalMatrix G;
  RationalVector nvec;
};

enum class Verdict { strictly_hyperbolic, hyperbolic_with_cusps, not_hyperbolic };
enum class IndexClass { interior, cusp, beyond };

std::string to_string(Verdict v);

struct HyperbolicityReport {
  Verdict verdict = Verdict::strictly_hyperbolic;
  std::vector<IndexClass> per_index;
  std::vector<int> cusp_indices;  // 0-based
};

struct Vertex {
  double v = 0.0;
  Eigen::VectorXd u;
};

struct DomainGeometry {
  Eigen::MatrixXd L;  // L L^T = S, row j is u_j
  std::vector<Vertex> vertices;
  Vertex base_vertex;  // v = 1, u = 0
  // The remaining vertex of the domain sits at v = infinity; it carries no
  // coordinates.
  struct CuspAtInfinity {
  } cusp_at_infinity;
  std::vector<int> boundary_cusps;  // 0-based indices with v_j = 0
  double gram_residual = 0.0;
};

ShapeMatrix shape_matrix(const CartanData& cd);
WeightGram weight_gram(const CartanData& cd);
HyperbolicityReport classify_hyperbolicity(const ShapeMatrix& s);
DomainGeometry embed_domain(const ShapeMatrix& s, const HyperbolicityReport& report);

/// Permutation p with S2(i, j) = S1(p[i], p[j]), if one exists.
std::optional<std::vector<int>> find_isomorphism(const ShapeMatrix& s1, const ShapeMatrix& s2);
bool isomorphic_shapes(const ShapeMatrix& s1, const ShapeMatrix& s2);

/// Applies a relabeling: result(i, j) = S(p[i], p[j]).
ShapeMatrix permute(const ShapeMatrix& s, const std::vector<int>& p);

/// Shape matrix straight from a catalog id.
ShapeMatrix shape_of(const AlgebraId& id);

}  // namespace kmvol
