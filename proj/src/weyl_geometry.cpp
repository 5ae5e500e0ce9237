#include "kmvol/weyl_geometry.hpp"

#include "kmvol/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace kmvol {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::strictly_hyperbolic: return "strictly_hyperbolic";
    case Verdict::hyperbolic_with_cusps: return "hyperbolic_with_cusps";
    case Verdict::not_hyperbolic: return "not_hyperbolic";
  }
  return "unknown";
}

ShapeMatrix make_shape(RationalMatrix S) {
  if (S.rows() == 0 || S.rows() != S.cols())
    throw Error(ErrorCode::DimensionMismatch, "shape matrix must be square and non-empty");
  if (S != S.transpose()) throw Error(ErrorCode::InvalidArgument, "shape matrix must be symmetric");
  ShapeMatrix out;
  out.detS = determinant_exact(S);
  out.S = std::move(S);
  return out;
}

bool has_shape_invariants(const ShapeMatrix& s) {
  for (Eigen::Index i = 0; i < s.n(); ++i)
    for (Eigen::Index j = 0; j < s.n(); ++j)
      if (s.S(i, j) <= 0) return false;
  return s.S == s.S.transpose() && leading_minors_positive(s.S) && s.detS == determinant_exact(s.S);
}

ShapeMatrix shape_matrix(const CartanData& cd) {
  const Eigen::Index n = cd.Binv.rows();
  RationalMatrix S(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      S(i, j) = cd.Binv(i, j) / (2 * cd.datum.labels(i) * cd.datum.labels(j));
  return make_shape(std::move(S));
}

WeightGram weight_gram(const CartanData& cd) {
  const Eigen::Index n = cd.Binv.rows();
  WeightGram w;
  w.G.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      w.G(i, j) = cd.norms(i) * cd.Binv(i, j) * cd.norms(j) / 2;
  w.nvec = cd.nvec;
  return w;
}

HyperbolicityReport classify_hyperbolicity(const ShapeMatrix& s) {
  HyperbolicityReport r;
  bool beyond = false;
  for (Eigen::Index i = 0; i < s.n(); ++i) {
    const Rational& d = s.S(i, i);
    if (d < 1) {
      r.per_index.push_back(IndexClass::interior);
    } else if (d == 1) {
      r.per_index.push_back(IndexClass::cusp);
      r.cusp_indices.push_back(static_cast<int>(i));
    } else {
      r.per_index.push_back(IndexClass::beyond);
      beyond = true;
    }
  }
  if (beyond) r.verdict = Verdict::not_hyperbolic;
  else if (!r.cusp_indices.empty()) r.verdict = Verdict::hyperbolic_with_cusps;
  else r.verdict = Verdict::strictly_hyperbolic;
  return r;
}

DomainGeometry embed_domain(const ShapeMatrix& s, const HyperbolicityReport& report) {
  if (report.verdict == Verdict::not_hyperbolic)
    throw Error(ErrorCode::NotHyperbolic, "a vertex lies outside the upper half space");
  const Eigen::Index n = s.n();
  const Eigen::MatrixXd Sd = to_double(s.S);
  Eigen::LLT<Eigen::MatrixXd> llt(Sd);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorCode::InvalidArgument, "shape matrix is not positive definite");

  DomainGeometry g;
  g.L = llt.matrixL();
  g.gram_residual = (g.L * g.L.transpose() - Sd).cwiseAbs().maxCoeff();
  g.base_vertex.v = 1.0;
  g.base_vertex.u = Eigen::VectorXd::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Vertex vx;
    vx.u = g.L.row(j).transpose();
    vx.v = std::sqrt(to_double(Rational(1 - s.S(j, j))));
    g.vertices.push_back(std::move(vx));
  }
  g.boundary_cusps = report.cusp_indices;
  return g;
}

ShapeMatrix permute(const ShapeMatrix& s, const std::vector<int>& p) {
  const Eigen::Index n = s.n();
  RationalMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = s.S(p[i], p[j]);
  ShapeMatrix r;
  r.S = std::move(out);
  r.detS = s.detS;
  return r;
}

namespace {

// Backtracking search: positions of s2 are assigned images in s1 one at a
// time, checking every entry against the already-fixed ones.
bool extend(const RationalMatrix& a, const RationalMatrix& b, std::vector<int>& p,
            std::vector<bool>& used, Eigen::Index k) {
  const Eigen::Index n = a.rows();
  if (k == n) return true;
  for (Eigen::Index c = 0; c < n; ++c) {
    if (used[c] || a(c, c) != b(k, k)) continue;
    bool ok = true;
    for (Eigen::Index i = 0; i < k && ok; ++i) ok = a(p[i], c) == b(i, k);
    if (!ok) continue;
    p[k] = static_cast<int>(c);
    used[c] = true;
    if (extend(a, b, p, used, k + 1)) return true;
    used[c] = false;
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> find_isomorphism(const ShapeMatrix& s1, const ShapeMatrix& s2) {
  if (s1.n() != s2.n()) return std::nullopt;
  const Eigen::Index n = s1.n();
  std::vector<Rational> d1(s1.S.diagonal().begin(), s1.S.diagonal().end());
  std::vector<Rational> d2(s2.S.diagonal().begin(), s2.S.diagonal().end());
  std::sort(d1.begin(), d1.end());
  std::sort(d2.begin(), d2.end());
  if (d1 != d2 || s1.detS != s2.detS) return std::nullopt;
  std::vector<int> p(static_cast<std::size_t>(n), -1);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  if (!extend(s1.S, s2.S, p, used, 0)) return std::nullopt;
  return p;
}

bool isomorphic_shapes(const ShapeMatrix& s1, const ShapeMatrix& s2) {
  return find_isomorphism(s1, s2).has_value();
}

ShapeMatrix shape_of(const AlgebraId& id) {
  return shape_matrix(symmetrize_and_normalize(catalog_entry(id)));
}

}  // namespace kmvol
