#pragma once

#include <complex>
#include <span>
#include <vector>

#include "sextic/rational.hpp"

namespace sextic {

enum class BorelMethod { quadrature_borel_pade, closed_form_leading };

const char* to_string(BorelMethod m);

struct BorelSumResult {
  double value_real = 0.0;
  double value_imag = 0.0;
  BorelMethod method = BorelMethod::quadrature_borel_pade;
  int quadrature_nodes = 0;  // 0 for the closed form
  std::vector<std::complex<double>> borel_poles;  // poles of the Borel-plane approximant
  bool asymptotic_regime = false;  // closed form fell back to the tiny-|lambda| series
};

// Borel-Pade: b_j = c_j / j!, Pade [m/n] of sum b_j t^j, then
// integral_0^inf e^{-t} P(lambda t) dt by Gauss-Laguerre with node doubling
// (200 up, two successive sizes within 1e-10). A real positive Borel-plane
// pole inside the quadrature range raises NonSummableError -- that is the
// expected failure mode for lambda < 0.
BorelSumResult borel_pade_sum(std::span<const double> coeffs, int m, int n, double lambda);

// Same, but the Borel transform c_j/j! is formed in exact rational arithmetic
// and converted only afterwards (high orders lose the alternation structure
// if divided in floating point).
BorelSumResult borel_pade_sum(std::span<const Rational> coeffs, int m, int n, double lambda);

// Borel sum of the pure leading large-order series f0 (-8 lambda)^j j!:
//   lambda > 0: f0 * u e^u E1(u), u = 1/(8 lambda) (real);
//   lambda < 0: principal value f0 * a e^{-a} Ei(a) plus the pole-residue
//               imaginary part pi f0 a e^{-a}, a = 1/(8 |lambda|).
// |lambda| < 1e-4 switches to the optimally truncated asymptotic series
// (asymptotic_regime flag) to dodge Shi/Chi argument overflow.
BorelSumResult leading_borel_closed_form(double lambda, double f0);

}  // namespace sextic
