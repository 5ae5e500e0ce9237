#include "kmvol/lobachevsky.hpp"

#include "kmvol/errors.hpp"
#include "kmvol/rational.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace kmvol {

namespace {

constexpr double kPi = std::numbers::pi;
// 2 pi = kTwoPiHi + kTwoPiLo to about 107 bits.
constexpr double kTwoPiHi = 6.283185307179586232;
constexpr double kTwoPiLo = 2.4492935982947064e-16;

constexpr int kMaxBernoulli = 90;

// Exact Bernoulli numbers B_0..B_kMaxBernoulli with B_1 = -1/2.
const std::vector<Rational>& bernoulli_exact() {
  static const std::vector<Rational> table = [] {
    std::vector<Rational> b(kMaxBernoulli + 1);
    b[0] = 1;
    for (int m = 1; m <= kMaxBernoulli; ++m) {
      Rational acc = 0;
      Integer binom = 1;  // C(m+1, j)
      for (int j = 0; j < m; ++j) {
        acc += Rational(binom) * b[j];
        binom = binom * (m + 1 - j) / (j + 1);
      }
      b[m] = -acc / (m + 1);
    }
    return b;
  }();
  return table;
}

const std::vector<double>& bernoulli() {
  static const std::vector<double> table = [] {
    std::vector<double> out;
    for (const auto& x : bernoulli_exact()) out.push_back(to_double(x));
    return out;
  }();
  return table;
}

// |B_2k| / (2k (2k+1)!) for k = 1..kClausenTerms.
constexpr int kClausenTerms = 30;

const std::vector<double>& clausen_coefficients() {
  static const std::vector<double> table = [] {
    const auto& b = bernoulli_exact();
    std::vector<double> out;
    Integer fact = 1;  // (2k+1)!
    for (int k = 1; k <= kClausenTerms; ++k) {
      fact *= (2 * k) * (2 * k + 1);
      out.push_back(to_double(abs(b[2 * k]) / (Rational(fact) * (2 * k))));
    }
    return out;
  }();
  return table;
}

}  // namespace

double reduce_two_pi(double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "angle must be finite");
  const double k = std::nearbyint(x / kTwoPiHi);
  double r = std::fma(-k, kTwoPiHi, x);
  r = std::fma(-k, kTwoPiLo, r);
  if (r >= kPi) r = (r - kTwoPiHi) - kTwoPiLo;
  else if (r < -kPi) r = (r + kTwoPiHi) + kTwoPiLo;
  return r;
}

double clausen2(double x) {
  const double r = reduce_two_pi(x);
  const double t = std::abs(r);
  if (t == 0.0) return 0.0;
  // Cl_2(t) = t - t log t + sum_k |B_2k| t^(2k+1) / (2k (2k+1)!) on (0, pi];
  // the first two terms integrate the log singularity of log|2 sin(t/2)|.
  const auto& c = clausen_coefficients();
  const double t2 = t * t;
  double poly = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) poly = poly * t2 + *it;
  const double value = t - t * std::log(t) + t * t2 * poly;
  return r < 0 ? -value : value;
}

double lobachevsky(double theta) { return 0.5 * clausen2(2.0 * theta); }

double zeta(int s) {
  if (s < 2) throw Error(ErrorCode::InvalidArgument, "zeta needs s >= 2");
  // Euler-Maclaurin with cut N.
  constexpr int N = 16;
  const auto& b = bernoulli();
  double head = 0.0;
  for (int r = N - 1; r >= 1; --r) head += std::pow(static_cast<double>(r), -s);
  const double n = N;
  double tail = std::pow(n, 1 - s) / (s - 1) + 0.5 * std::pow(n, -s);
  double rising = s;            // s (s+1) ... (s+2k-2)
  double fact = 2.0;            // (2k)!
  double npow = std::pow(n, -s - 1);
  for (int k = 1; k <= 12; ++k) {
    tail += b[2 * k] / fact * rising * npow;
    rising *= (s + 2 * k - 1) * static_cast<double>(s + 2 * k);
    fact *= (2 * k + 1) * static_cast<double>(2 * k + 2);
    npow /= n * n;
  }
  return head + tail;
}

PolylogResult polylog_circle(int m, double theta) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "polylog order must be >= 1");
  const double phi = reduce_two_pi(2.0 * theta);
  PolylogResult out;
  out.order = m;
  if (m == 1) {
    if (phi == 0.0)
      throw Error(ErrorCode::DivergentPoint, "Li_1 diverges at theta = 0 mod pi");
    out.real_part = -std::log(2.0 * std::abs(std::sin(0.5 * phi)));
    out.imag_part = 0.5 * ((phi > 0 ? kPi : -kPi) - phi);
    return out;
  }

  // Li_m(e^{mu}) = sum_{k != m-1} zeta(m-k) mu^k / k!
  //              + mu^(m-1) / (m-1)! (H_{m-1} - log(-mu)),   mu = i phi.
  using C = std::complex<double>;
  auto i_pow = [&](int k) {
    static const C cycle[4] = {C(1, 0), C(0, 1), C(-1, 0), C(0, -1)};
    return cycle[k % 4];
  };
  const double a = std::abs(phi);
  C sum = 0.0;
  double scaled = 1.0;  // |phi|^k / k!
  for (int k = 0; k <= m - 2; ++k) {
    const double sign = (phi < 0 && k % 2 == 1) ? -1.0 : 1.0;
    sum += zeta(m - k) * sign * scaled * i_pow(k);
    scaled *= a / (k + 1);
  }
  // scaled = |phi|^(m-1) / (m-1)!
  if (phi != 0.0) {
    double harmonic = 0.0;
    for (int j = 1; j <= m - 1; ++j) harmonic += 1.0 / j;
    const double sign = (phi < 0 && (m - 1) % 2 == 1) ? -1.0 : 1.0;
    const C bracket(harmonic - std::log(a), phi > 0 ? 0.5 * kPi : -0.5 * kPi);
    sum += sign * scaled * i_pow(m - 1) * bracket;
  }
  scaled *= a / m;  // |phi|^m / m!
  // zeta(-j) = (-1)^j B_{j+1} / (j+1); zero for even j > 0.
  const auto& b = bernoulli();
  const double ratio = a / (2.0 * kPi);
  for (int j = 0; j + 1 <= kMaxBernoulli && ratio > 0.0; ++j) {
    if (j == 0 || j % 2 == 1) {
      const double z = ((j % 2) ? -1.0 : 1.0) * b[j + 1] / (j + 1);
      const double sign = (phi < 0 && (m + j) % 2 == 1) ? -1.0 : 1.0;
      sum += z * sign * scaled * i_pow(m + j);
    }
    scaled *= a / (m + j + 1);
    // |zeta(-j)| <= 4 j! / (2 pi)^(j+1), so the remainder after index j is
    // at most 4 |phi|^m / (2 pi m!) * ratio^(j+1) / (1 - ratio).
    out.tail_bound = 4.0 / (2.0 * kPi) * std::pow(a, m) / std::tgamma(m + 1.0) *
                     std::pow(ratio, j + 1) / (1.0 - ratio);
    if (out.tail_bound < 1e-17) break;
  }
  out.real_part = sum.real();
  out.imag_part = sum.imag();
  return out;
}

PolylogResult polylog_circle_direct(int m, double theta, long terms) {
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "direct summation needs m >= 2");
  if (terms < 1) throw Error(ErrorCode::InvalidArgument, "need at least one term");
  const double phi = reduce_two_pi(2.0 * theta);
  double re = 0.0;
  double im = 0.0;
  for (long r = terms; r >= 1; --r) {
    const double w = std::pow(static_cast<double>(r), -m);
    const double angle = reduce_two_pi(static_cast<double>(r) * phi);
    re += w * std::cos(angle);
    im += w * std::sin(angle);
  }
  PolylogResult out;
  out.order = m;
  out.real_part = re;
  out.imag_part = im;
  out.tail_bound = std::pow(static_cast<double>(terms), 1 - m) / (m - 1);
  return out;
}

double higher_lobachevsky(int m, double theta) {
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "higher Lobachevsky needs m >= 2");
  const PolylogResult p = polylog_circle(m, theta);
  return std::ldexp(m % 2 == 0 ? p.imag_part : p.real_part, 1 - m);
}

double evaluate_closed_form(ClosedFormTag tag) {
  switch (tag) {
    case ClosedFormTag::pi_over_6: return kPi / 6.0;
    case ClosedFormTag::quarter_lob_pi3: return lobachevsky(kPi / 3.0) / 4.0;
    case ClosedFormTag::eighth_lob_pi3: return lobachevsky(kPi / 3.0) / 8.0;
    case ClosedFormTag::sixth_lob_pi4: return lobachevsky(kPi / 4.0) / 6.0;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown closed-form tag");
}

double evaluate_closed_form(const ClosedForm& cf) { return evaluate_closed_form(cf.tag); }

}  // namespace kmvol
