#pragma once

#include <complex>
#include <span>
#include <vector>

namespace sextic {

// Rational approximant [m/n]: numerator degree m, denominator degree n,
// denominator constant term fixed to 1. Its Taylor expansion matches the
// input series through order m + n.
struct PadeApproximant {
  int m = 0;
  int n = 0;
  std::vector<double> numerator;    // length m + 1
  std::vector<double> denominator;  // length n + 1, denominator[0] == 1
};

// Solve the m+n matching conditions (denominator from the Hankel-type linear
// system via rank-revealing QR, numerator by convolution). Needs at least
// m+n+1 coefficients; a condition estimate above 1e12 or rank deficiency
// raises DegeneracyError suggesting a smaller [m/n].
PadeApproximant pade_fit(std::span<const double> coeffs, int m, int n);

// Horner evaluation of both polynomials. |denominator| < 1e-14 => PoleError.
double pade_eval(const PadeApproximant& approx, double lambda);

// Roots of the denominator polynomial (companion matrix); the Borel module
// uses these as pole diagnostics.
std::vector<std::complex<double>> denominator_roots(const PadeApproximant& approx);

// First `count` Taylor coefficients of the rational function (long division);
// used to assert the expansion-match invariant.
std::vector<double> reexpand(const PadeApproximant& approx, int count);

}  // namespace sextic
