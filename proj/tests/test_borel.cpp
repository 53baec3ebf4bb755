#include <catch2/catch.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "sextic/borel.hpp"
#include "sextic/errors.hpp"
#include "sextic/hvpt.hpp"
#include "sextic/rational.hpp"
#include "sextic/special_functions.hpp"

using namespace sextic;

namespace {

std::vector<double> alternating_factorials(int count, double base) {
  std::vector<double> c(static_cast<size_t>(count));
  double v = 1.0;
  for (int j = 0; j < count; ++j) {
    c[static_cast<size_t>(j)] = v;
    v *= -base * (j + 1);
  }
  return c;
}

}  // namespace

TEST_CASE("euler series resummation", "[borel]") {
  // c_j = (-1)^j j!: Borel transform is 1/(1+t), so the sum at lambda is
  // exactly u e^u E1(u) with u = 1/lambda -- an independent closed form.
  // Because the transform is exactly geometric, [1/1] captures it exactly
  // while higher orders hit the degenerate block of the Pade table.
  const std::vector<double> coeffs = alternating_factorials(13, 1.0);
  const BorelSumResult r = borel_pade_sum(coeffs, 1, 1, 0.1);
  const double u = 10.0;
  REQUIRE(r.value_real == Approx(u * expint_e1_scaled(u)).epsilon(1e-8));
  REQUIRE(r.value_real == Approx(0.91563).epsilon(1e-4));
  REQUIRE(r.value_imag == 0.0);
  REQUIRE(r.method == BorelMethod::quadrature_borel_pade);
  REQUIRE(r.quadrature_nodes >= 200);

  // The Borel-plane approximant must see the t = -1 singularity.
  bool found = false;
  for (const auto& pole : r.borel_poles) {
    if (std::abs(pole - std::complex<double>(-1.0, 0.0)) < 1e-6) found = true;
  }
  REQUIRE(found);

  // Tiny lambda: the resummed value approaches c_0.
  const BorelSumResult tiny = borel_pade_sum(coeffs, 1, 1, 1e-9);
  REQUIRE(tiny.value_real == Approx(1.0).epsilon(1e-6));

  // Asking for a deeper approximant of the exactly-geometric transform lands
  // in a singular block and must be diagnosed, not silently solved.
  REQUIRE_THROWS_AS(borel_pade_sum(coeffs, 6, 6, 0.1), DegeneracyError);
}

TEST_CASE("convergent series sanity", "[borel]") {
  // ln(1+x)/x has c_j = (-1)^j/(j+1); Borel resummation of a convergent
  // series must reproduce the ordinary sum.
  std::vector<double> coeffs(13);
  for (int j = 0; j <= 12; ++j)
    coeffs[static_cast<size_t>(j)] = (j % 2 == 0 ? 1.0 : -1.0) / (j + 1);
  const BorelSumResult r = borel_pade_sum(coeffs, 6, 6, 0.5);
  REQUIRE(r.value_real == Approx(std::log(1.5) / 0.5).epsilon(1e-8));
}

TEST_CASE("rational overload matches double overload", "[borel]") {
  const PerturbationSeries x1 = generate_series(0, 14).moments.moment_series(1);
  std::vector<double> doubles;
  for (const Rational& c : x1.coefficients) doubles.push_back(to_double(c));

  const BorelSumResult a = borel_pade_sum(x1.coefficients, 6, 6, 0.02);
  const BorelSumResult b = borel_pade_sum(doubles, 6, 6, 0.02);
  REQUIRE(a.value_real == Approx(b.value_real).epsilon(1e-9));

  // Physical check: at small positive coupling the resummed <x^2> is close to
  // the exact-ground-state value computable from the partial sum.
  REQUIRE(a.value_real == Approx(evaluate_partial_sum(x1, 0.02, 6)).epsilon(1e-2));
}

TEST_CASE("negative coupling is non-summable", "[borel]") {
  const PerturbationSeries x1 = generate_series(0, 14).moments.moment_series(1);
  REQUIRE_THROWS_AS(borel_pade_sum(x1.coefficients, 6, 6, -0.02), NonSummableError);

  // The alternating model series has its Borel pole on the negative axis, so
  // negative lambda maps it onto the integration path as well.
  const std::vector<double> euler = alternating_factorials(13, 1.0);
  REQUIRE_THROWS_AS(borel_pade_sum(euler, 1, 1, -0.1), NonSummableError);
}

TEST_CASE("leading closed form", "[borel]") {
  const double f0 = 0.450158158079;

  // Cross-method agreement: the closed form and the quadrature pipeline must
  // agree on the pure leading series f0 (-8 lambda)^j j!.
  const double lambda = 0.05;
  const BorelSumResult closed = leading_borel_closed_form(lambda, f0);
  std::vector<double> leading = alternating_factorials(13, 8.0);
  for (double& c : leading) c *= f0;
  const BorelSumResult quad = borel_pade_sum(leading, 1, 1, lambda);
  REQUIRE(closed.value_real == Approx(quad.value_real).epsilon(1e-8));
  REQUIRE(closed.method == BorelMethod::closed_form_leading);
  REQUIRE(closed.quadrature_nodes == 0);
  REQUIRE_FALSE(closed.asymptotic_regime);

  // lambda -> 0+ recovers f0 monotonically from below.
  double prev = 0.0;
  for (double l : {0.02, 0.01, 0.005, 0.002}) {
    const double v = leading_borel_closed_form(l, f0).value_real;
    REQUIRE(v > prev);
    REQUIRE(v < f0);
    prev = v;
  }
  REQUIRE(leading_borel_closed_form(0.002, f0).value_real == Approx(f0).epsilon(0.2));

  // Imaginary part at lambda < 0: pi f0 a e^{-a} with a = 1/(8|lambda|).
  const double lneg = -0.05;
  const double a = 1.0 / (8.0 * std::abs(lneg));
  const BorelSumResult neg = leading_borel_closed_form(lneg, f0);
  REQUIRE(neg.value_imag == Approx(std::numbers::pi * f0 * a * std::exp(-a)).epsilon(1e-12));

  // The normalized imaginary prefactor matches pi f0 / 8 ~ 0.176715:
  // Im / (a e^{-a}) / 8 in units of the residue formula.
  REQUIRE(std::numbers::pi * f0 / 8.0 == Approx(0.176715).margin(1e-4));

  // The principal-value real part has exactly one interior maximum on
  // [-0.1, -0.005]: a e^{-a} Ei(a) peaks near a ~ 2.5, i.e. lambda ~ -0.05,
  // well inside the window.
  std::vector<double> re;
  for (int i = 0; i < 40; ++i) {
    const double l = -0.005 - (0.095 * i) / 39.0;
    re.push_back(leading_borel_closed_form(l, f0).value_real);
  }
  int maxima = 0;
  for (size_t i = 1; i + 1 < re.size(); ++i)
    if (re[i] > re[i - 1] && re[i] > re[i + 1]) ++maxima;
  REQUIRE(maxima == 1);
  REQUIRE(re.front() < *std::max_element(re.begin(), re.end()));
  REQUIRE(re.back() < *std::max_element(re.begin(), re.end()));

  // Tiny |lambda| switches to the truncated asymptotic series.
  const BorelSumResult asym = leading_borel_closed_form(5e-5, f0);
  REQUIRE(asym.asymptotic_regime);
  REQUIRE(asym.value_real == Approx(f0).epsilon(1e-3));

  REQUIRE_THROWS_AS(leading_borel_closed_form(0.0, f0), DomainError);
}
