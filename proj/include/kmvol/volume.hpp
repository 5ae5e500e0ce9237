#pragma once

// Volume of the fundamental domain,
//   vol = (1/n) sqrt(det S) int_{Delta_n} (1 - t^T S t)^(-n/2) dt,
// by adaptive simplex cubature, by the power series in Q = t^T S t, and by
// Monte Carlo sampling of the simplex.

#include "kmvol/closed_form.hpp"
#include "kmvol/weyl_geometry.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace kmvol {

struct QForm {
  ShapeMatrix shape;
  Eigen::MatrixXd S;  // correctly rounded copy of shape.S
  double sqrt_det = 0.0;
  Rational qmax;                  // max_ij S_ij
  std::vector<int> cusp_corners;  // indices with S_ii = 1

  int n() const { return static_cast<int>(S.rows()); }
};

QForm make_qform(const ShapeMatrix& s);

/// Q(t) = t^T S t for any Eigen vector expression.
template <typename DerivedS, typename DerivedT>
typename DerivedT::Scalar quadratic_form(const Eigen::MatrixBase<DerivedS>& S,
                                         const Eigen::MatrixBase<DerivedT>& t) {
  return t.dot(S * t);
}

/// sqrt(det S) (1 - Q(t))^(-n/2); +infinity when Q(t) >= 1.
double integrand(const QForm& q, const Eigen::Ref<const Eigen::VectorXd>& t);

/// int_{Delta_n} prod t_i^alpha_i dt = prod(alpha_i!) / (n + |alpha|)!.
Rational simplex_monomial_integral(const IntVector& alpha);

enum class Method { adaptive, series, montecarlo, closed_form };
std::string to_string(Method m);

struct VolumeEstimate {
  double value = 0.0;
  // Heuristic for adaptive, rigorous tail bound for series when qmax < 1,
  // one standard error for Monte Carlo.
  double error_bound = 0.0;
  Method method = Method::adaptive;
  std::int64_t work = 0;  // integrand evaluations, series terms, or samples
  bool converged = false;
  bool rigorous = false;
};

struct AdaptiveOptions {
  double tol = 1e-8;       // absolute
  double rel_tol = 0.0;    // relative to the running estimate; the looser wins
  std::int64_t budget = 200000;  // maximum number of cells
  int threads = 1;
};

/// Greedy longest-edge bisection driven by an embedded Grundmann-Moller
/// pair. Cells with a cusp corner use a radial substitution that removes the
/// corner singularity. Returns converged = false when the budget runs out.
VolumeEstimate volume_adaptive(const ShapeMatrix& s, const AdaptiveOptions& opts);
VolumeEstimate volume_adaptive(const ShapeMatrix& s, double tol, std::int64_t budget);

inline constexpr int kSeriesDimensionCap = 4;

/// Series sum_k c_k int Q^k with c_k = (n/2)_k / k!. Throws DimensionCap
/// above the cap and BudgetExhausted when max_order terms do not reach tol.
VolumeEstimate volume_series(const ShapeMatrix& s, int max_order, double tol,
                             int dimension_cap = kSeriesDimensionCap);

/// Partial sums for orders 0..max_order (already scaled to volume units).
std::vector<double> series_partial_sums(const ShapeMatrix& s, int max_order,
                                        int dimension_cap = kSeriesDimensionCap);

/// Uniform sampling of the simplex; chunk c draws from a stream seeded by
/// (seed, c), so the result does not depend on the thread count.
VolumeEstimate volume_montecarlo(const ShapeMatrix& s, std::int64_t samples, std::uint64_t seed,
                                 int threads = 1);

/// Samples per independently seeded chunk.
inline constexpr std::int64_t kMonteCarloChunk = 1 << 16;

}  // namespace kmvol
