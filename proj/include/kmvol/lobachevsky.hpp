#pragma once

// Clausen and Lobachevsky functions, polylogarithms on the unit circle and
// the higher Lobachevsky functions. Absolute accuracy target 1e-13.

#include "kmvol/closed_form.hpp"

namespace kmvol {

/// x reduced to [-pi, pi) with a two-word representation of 2 pi.
double reduce_two_pi(double x);

/// Cl_2(x) = -int_0^x log|2 sin(t/2)| dt.
double clausen2(double x);

/// L(theta) = -int_0^theta log|2 sin t| dt = Cl_2(2 theta) / 2.
double lobachevsky(double theta);

struct PolylogResult {
  int order = 0;
  double real_part = 0.0;
  double imag_part = 0.0;
  double tail_bound = 0.0;  // bound on the discarded terms of the series used
};

/// Li_m(exp(2 i theta)) for m >= 1. Evaluated from the expansion in powers of
/// 2 theta (reduced to [-pi, pi)), whose coefficients are zeta values; the
/// tail bound covers the truncation of that expansion.
PolylogResult polylog_circle(int m, double theta);

/// Partial sum of sum_{r <= terms} r^-m exp(2 i r theta) with the bound
/// terms^(1-m) / (m-1) on the remainder (m >= 2). Slow; an oracle.
PolylogResult polylog_circle_direct(int m, double theta, long terms);

/// L_2k = 2^(1-2k) Im Li_2k(e^{2 i theta}), L_2k+1 = 2^-2k Re Li_2k+1(e^{2 i theta}).
double higher_lobachevsky(int m, double theta);

/// Riemann zeta at an integer argument s >= 2.
double zeta(int s);

double evaluate_closed_form(const ClosedForm& cf);
double evaluate_closed_form(ClosedFormTag tag);

}  // namespace kmvol
