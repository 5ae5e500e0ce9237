#pragma once

// Grundmann-Moller cubature on the n-simplex. The rule with parameter s has
// degree 2s+1 and its point set contains that of the rule with parameter
// s-1, which gives an embedded pair for error estimation at no extra cost.
//
// Points are barycentric columns; weights are normalized to sum to one, so
// a cell integral is cell_volume * sum_p w_p f(x_p).

#include "kmvol/errors.hpp"
#include "kmvol/rational.hpp"

#include <type_traits>
#include <vector>

namespace kmvol {

template <typename Scalar>
struct SimplexRule {
  int dim = 0;
  int degree = 0;
  Matrix<Scalar> bary;  // (dim+1) x points
  Vector<Scalar> weights;
};

template <typename Scalar>
struct EmbeddedSimplexRule {
  int dim = 0;
  int degree_high = 0;
  int degree_low = 0;
  Matrix<Scalar> bary;
  Vector<Scalar> w_high;
  Vector<Scalar> w_low;  // zero on points that only the high rule uses
};

namespace detail {

template <typename Scalar>
Scalar from_rational(const Rational& q) {
  if constexpr (std::is_same_v<Scalar, Rational>) return q;
  else return static_cast<Scalar>(to_double(q));
}

// Calls fn(beta) for every composition of `total` into `parts` non-negative
// integers, in lexicographically decreasing order.
template <typename Fn>
void for_each_composition(int total, int parts, std::vector<int>& beta, int k, Fn&& fn) {
  if (k == parts - 1) {
    beta[k] = total;
    fn(beta);
    return;
  }
  for (int a = total; a >= 0; --a) {
    beta[k] = a;
    for_each_composition(total - a, parts, beta, k + 1, fn);
  }
}

// Exact normalized weight of level i of the rule with parameter s.
inline Rational gm_weight(int n, int s, int i) {
  const int d = 2 * s + 1;
  Integer num = 1;
  for (int k = 0; k < d; ++k) num *= (d + n - 2 * i);
  Integer den = Integer(1) << (2 * s);
  for (int k = 2; k <= i; ++k) den *= k;
  for (int k = 2; k <= d + n - i; ++k) den *= k;
  Integer nfact = 1;
  for (int k = 2; k <= n; ++k) nfact *= k;
  Rational w(num * nfact, den);
  return (i % 2 == 0) ? w : Rational(-w);
}

template <typename Scalar>
std::vector<Scalar> gm_level_weights(int n, int s) {
  std::vector<Scalar> w;
  for (int i = 0; i <= s; ++i) w.push_back(from_rational<Scalar>(gm_weight(n, s, i)));
  return w;
}

struct GmPoint {
  int level;  // i
  std::vector<int> beta;
};

inline std::vector<GmPoint> gm_points(int n, int s) {
  std::vector<GmPoint> pts;
  std::vector<int> beta(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= s; ++i)
    for_each_composition(s - i, n + 1, beta, 0,
                         [&](const std::vector<int>& b) { pts.push_back({i, b}); });
  return pts;
}

template <typename Scalar>
Matrix<Scalar> gm_bary(int n, int s, const std::vector<GmPoint>& pts) {
  const int d = 2 * s + 1;
  Matrix<Scalar> bary(n + 1, static_cast<Eigen::Index>(pts.size()));
  for (std::size_t p = 0; p < pts.size(); ++p) {
    const int den = d + n - 2 * pts[p].level;
    for (int k = 0; k <= n; ++k)
      bary(k, static_cast<Eigen::Index>(p)) =
          from_rational<Scalar>(make_rational(2 * pts[p].beta[static_cast<std::size_t>(k)] + 1, den));
  }
  return bary;
}

}  // namespace detail

/// Rule of degree 2s+1 on the dim-simplex.
template <typename Scalar = double>
SimplexRule<Scalar> grundmann_moller(int dim, int s) {
  if (dim < 1 || s < 0) throw Error(ErrorCode::InvalidArgument, "invalid Grundmann-Moller parameters");
  const auto pts = detail::gm_points(dim, s);
  SimplexRule<Scalar> rule;
  rule.dim = dim;
  rule.degree = 2 * s + 1;
  rule.bary = detail::gm_bary<Scalar>(dim, s, pts);
  const auto levels = detail::gm_level_weights<Scalar>(dim, s);
  rule.weights.resize(static_cast<Eigen::Index>(pts.size()));
  for (std::size_t p = 0; p < pts.size(); ++p)
    rule.weights(static_cast<Eigen::Index>(p)) = levels[static_cast<std::size_t>(pts[p].level)];
  return rule;
}

/// Degree 2s+1 rule with the embedded degree 2s-1 rule (s >= 1).
template <typename Scalar = double>
EmbeddedSimplexRule<Scalar> grundmann_moller_pair(int dim, int s) {
  if (dim < 1 || s < 1) throw Error(ErrorCode::InvalidArgument, "embedded pair needs s >= 1");
  const auto pts = detail::gm_points(dim, s);
  EmbeddedSimplexRule<Scalar> rule;
  rule.dim = dim;
  rule.degree_high = 2 * s + 1;
  rule.degree_low = 2 * s - 1;
  rule.bary = detail::gm_bary<Scalar>(dim, s, pts);
  const auto np = static_cast<Eigen::Index>(pts.size());
  rule.w_high.resize(np);
  rule.w_low.resize(np);
  const auto high = detail::gm_level_weights<Scalar>(dim, s);
  const auto low = detail::gm_level_weights<Scalar>(dim, s - 1);
  for (std::size_t p = 0; p < pts.size(); ++p) {
    const auto i = static_cast<std::size_t>(pts[p].level);
    const auto k = static_cast<Eigen::Index>(p);
    rule.w_high(k) = high[i];
    // Level i of rule s is level i-1 of rule s-1.
    rule.w_low(k) = i == 0 ? Scalar(0) : low[i - 1];
  }
  return rule;
}

}  // namespace kmvol
