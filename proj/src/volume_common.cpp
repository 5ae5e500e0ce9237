#include "kmvol/volume.hpp"

#include "kmvol/errors.hpp"

#include <cmath>
#include <limits>

namespace kmvol {

std::string to_string(Method m) {
  switch (m) {
    case Method::adaptive: return "adaptive";
    case Method::series: return "series";
    case Method::montecarlo: return "montecarlo";
    case Method::closed_form: return "closed_form";
  }
  return "unknown";
}

QForm make_qform(const ShapeMatrix& s) {
  QForm q;
  q.shape = s;
  q.S = to_double(s.S);
  q.sqrt_det = std::sqrt(to_double(s.detS));
  q.qmax = s.S(0, 0);
  for (Eigen::Index i = 0; i < s.n(); ++i) {
    for (Eigen::Index j = 0; j < s.n(); ++j)
      if (s.S(i, j) > q.qmax) q.qmax = s.S(i, j);
    if (s.S(i, i) == 1) q.cusp_corners.push_back(static_cast<int>(i));
  }
  return q;
}

double integrand(const QForm& q, const Eigen::Ref<const Eigen::VectorXd>& t) {
  if (t.size() != q.S.rows())
    throw Error(ErrorCode::DimensionMismatch, "point dimension differs from the shape matrix");
  const double gap = 1.0 - quadratic_form(q.S, t);
  if (gap <= 0.0) return std::numeric_limits<double>::infinity();
  return q.sqrt_det * std::pow(gap, -0.5 * static_cast<double>(q.n()));
}

Rational simplex_monomial_integral(const IntVector& alpha) {
  Integer num = 1;
  long total = alpha.size();
  for (Eigen::Index i = 0; i < alpha.size(); ++i) {
    if (alpha(i) < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
    for (int k = 2; k <= alpha(i); ++k) num *= k;
    total += alpha(i);
  }
  Integer den = 1;
  for (long k = 2; k <= total; ++k) den *= k;
  return Rational(num, den);
}

}  // namespace kmvol
