#include "kmvol/volume.hpp"

#include "kmvol/errors.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace kmvol {

namespace {

// Dense storage of homogeneous polynomials of a fixed degree D in n
// variables. Monomials are ordered by decreasing alpha_0, then decreasing
// alpha_1, and so on; rank() is the position in that order.
class MonomialIndex {
 public:
  MonomialIndex(int n, int max_degree) : n_(n), size_(max_degree + n + 1) {
    binom_.assign(static_cast<std::size_t>(size_ * (n + 1)), 0.0);
    for (int a = 0; a < size_; ++a) {
      at(a, 0) = 1.0;
      for (int b = 1; b <= std::min(a, n); ++b)
        at(a, b) = at(a - 1, b - 1) + (b <= a - 1 ? at(a - 1, b) : 0.0);
    }
  }

  std::size_t count(int degree) const {
    return static_cast<std::size_t>(binomial(degree + n_ - 1, n_ - 1));
  }

  std::size_t rank(const int* alpha, int degree) const {
    double r = 0.0;
    int remaining = degree;
    for (int i = 0; i + 1 < n_; ++i) {
      const int parts = n_ - i - 1;
      // Monomials sharing the prefix but with a larger alpha_i come first.
      r += binomial(remaining - alpha[i] - 1 + parts, parts);
      remaining -= alpha[i];
    }
    return static_cast<std::size_t>(r);
  }

 private:
  double binomial(int a, int b) const {
    if (a < 0 || b < 0 || b > a) return 0.0;
    return binom_[static_cast<std::size_t>(a * (n_ + 1) + b)];
  }
  double& at(int a, int b) { return binom_[static_cast<std::size_t>(a * (n_ + 1) + b)]; }

  int n_;
  int size_;
  std::vector<double> binom_;
};

template <typename Fn>
void for_each_monomial(int n, int degree, std::vector<int>& alpha, int k, Fn&& fn) {
  if (k == n - 1) {
    alpha[static_cast<std::size_t>(k)] = degree;
    fn();
    return;
  }
  for (int a = degree; a >= 0; --a) {
    alpha[static_cast<std::size_t>(k)] = a;
    for_each_monomial(n, degree - a, alpha, k + 1, fn);
  }
}

// Yields int_{Delta_n} Q^k dt for k = 0, 1, 2, ... Coefficients are kept as
// b_alpha = c_alpha alpha! / (n + deg)!, so the integral is their plain sum.
class MomentGenerator {
 public:
  MomentGenerator(const Eigen::MatrixXd& S, int max_order)
      : S_(S), n_(static_cast<int>(S.rows())), index_(n_, 2 * max_order + 2) {
    double nfact = 1.0;
    for (int k = 2; k <= n_; ++k) nfact *= k;
    coeffs_.assign(1, 1.0 / nfact);
  }

  double current() const {
    double sum = 0.0;
    for (double b : coeffs_) sum += b;
    return sum;
  }

  void multiply_by_q() {
    const int next_degree = degree_ + 2;
    std::vector<double> next(index_.count(next_degree), 0.0);
    const double scale = 1.0 / ((n_ + degree_ + 1.0) * (n_ + degree_ + 2.0));
    std::vector<int> alpha(static_cast<std::size_t>(n_));
    std::vector<int> beta(static_cast<std::size_t>(n_));
    std::size_t source = 0;
    for_each_monomial(n_, degree_, alpha, 0, [&] {
      const double b = coeffs_[source++] * scale;
      if (b == 0.0) return;
      for (int i = 0; i < n_; ++i) {
        const double ai = alpha[static_cast<std::size_t>(i)];
        for (int j = i; j < n_; ++j) {
          beta = alpha;
          beta[static_cast<std::size_t>(i)] += 1;
          beta[static_cast<std::size_t>(j)] += 1;
          const double aj = alpha[static_cast<std::size_t>(j)];
          const double factor = i == j ? S_(i, i) * (ai + 1) * (ai + 2)
                                       : 2.0 * S_(i, j) * (ai + 1) * (aj + 1);
          next[index_.rank(beta.data(), next_degree)] += b * factor;
        }
      }
    });
    coeffs_ = std::move(next);
    degree_ = next_degree;
  }

 private:
  Eigen::MatrixXd S_;
  int n_;
  MonomialIndex index_;
  int degree_ = 0;
  std::vector<double> coeffs_;
};

void check_series_input(const ShapeMatrix& s, int max_order, int dimension_cap) {
  if (classify_hyperbolicity(s).verdict == Verdict::not_hyperbolic)
    throw Error(ErrorCode::NotHyperbolic, "the volume integral diverges");
  if (s.n() > dimension_cap)
    throw Error(ErrorCode::DimensionCap, "series engine is capped at dimension " +
                                             std::to_string(dimension_cap));
  if (max_order < 0) throw Error(ErrorCode::InvalidArgument, "max_order must be >= 0");
}

}  // namespace

std::vector<double> series_partial_sums(const ShapeMatrix& s, int max_order, int dimension_cap) {
  check_series_input(s, max_order, dimension_cap);
  const QForm q = make_qform(s);
  const int n = q.n();
  const double prefactor = q.sqrt_det / n;
  MomentGenerator moments(q.S, max_order);
  std::vector<double> sums;
  double c = 1.0;
  double sum = 0.0;
  for (int k = 0; k <= max_order; ++k) {
    if (k > 0) {
      c *= (0.5 * n + k - 1) / k;
      moments.multiply_by_q();
    }
    sum += prefactor * c * moments.current();
    sums.push_back(sum);
  }
  return sums;
}

VolumeEstimate volume_series(const ShapeMatrix& s, int max_order, double tol, int dimension_cap) {
  check_series_input(s, max_order, dimension_cap);
  const QForm q = make_qform(s);
  const int n = q.n();
  const double prefactor = q.sqrt_det / n;
  double nfact = 1.0;
  for (int k = 2; k <= n; ++k) nfact *= k;
  const bool rigorous = q.qmax < 1;
  const double qmax = to_double(q.qmax);

  MomentGenerator moments(q.S, max_order);
  VolumeEstimate est;
  est.method = Method::series;
  est.rigorous = rigorous;
  double c = 1.0;
  double sum = 0.0;
  int small_increments = 0;
  for (int k = 0; k <= max_order; ++k) {
    if (k > 0) {
      c *= (0.5 * n + k - 1) / k;
      moments.multiply_by_q();
    }
    const double term = prefactor * c * moments.current();
    sum += term;
    est.value = sum;
    est.work = k + 1;
    if (rigorous) {
      // int Q^j <= qmax^j / n!; the ratio of consecutive c_j qmax^j is
      // qmax (n/2 + j) / (j + 1), monotone in j, so a geometric tail bounds it.
      const double next_c = c * (0.5 * n + k) / (k + 1);
      const double ratio = qmax * std::max(1.0, (0.5 * n + k + 1) / (k + 2));
      const double tail = ratio < 1.0 ? prefactor / nfact * next_c * std::pow(qmax, k + 1) /
                                            (1.0 - ratio)
                                      : std::numeric_limits<double>::infinity();
      est.error_bound = tail;
      if (tail < tol) {
        est.converged = true;
        return est;
      }
    } else {
      est.error_bound = term;
      small_increments = term < tol ? small_increments + 1 : 0;
      if (small_increments >= 3) {
        est.converged = true;
        return est;
      }
    }
  }
  throw Error(ErrorCode::BudgetExhausted,
              "series did not reach tolerance within " + std::to_string(max_order) + " orders");
}

}  // namespace kmvol
