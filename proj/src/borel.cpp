#include "sextic/borel.hpp"

#include <cmath>
#include <string>

#include "sextic/errors.hpp"
#include "sextic/io_format.hpp"
#include "sextic/pade.hpp"
#include "sextic/quadrature.hpp"
#include "sextic/special_functions.hpp"

namespace sextic {

const char* to_string(BorelMethod m) {
  return m == BorelMethod::quadrature_borel_pade ? "quadrature_borel_pade"
                                                 : "closed_form_leading";
}

namespace {

BorelSumResult borel_pade_from_transform(const std::vector<double>& b, int m, int n,
                                         double lambda) {
  BorelSumResult result;
  result.method = BorelMethod::quadrature_borel_pade;

  const PadeApproximant approx = pade_fit(b, m, n);
  result.borel_poles = denominator_roots(approx);

  if (lambda == 0.0) {  // integral of e^{-t} c_0
    result.value_real = b.empty() ? 0.0 : b[0];
    return result;
  }

  int nodes = 200;
  const int max_nodes = 3200;
  double prev = 0.0;
  bool have_prev = false;
  for (; nodes <= max_nodes; nodes *= 2) {
    const QuadratureRule& rule = gauss_laguerre(nodes);
    // Poles of P(u) at u0 map to t = u0 / lambda; a real positive t inside
    // the quadrature range makes the integral meaningless.
    const double t_reach = rule.nodes.back() * 1.2;
    for (const auto& u0 : result.borel_poles) {
      const std::complex<double> t0 = u0 / lambda;
      if (std::abs(t0.imag()) <= 1e-8 * std::abs(t0) && t0.real() > 0.0 &&
          t0.real() < t_reach)
        throw NonSummableError(
            "Borel-plane pole on the positive real axis at t = " +
            format_double17(t0.real()) + " (lambda = " + format_double17(lambda) +
            "): series is not Borel summable here");
    }
    double sum = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i)
      sum += rule.weights[i] * pade_eval(approx, lambda * rule.nodes[i]);
    result.quadrature_nodes = nodes;
    if (have_prev && std::abs(sum - prev) <= 1e-10 * std::max(1.0, std::abs(sum))) {
      result.value_real = sum;
      return result;
    }
    prev = sum;
    have_prev = true;
  }
  throw ResourceError("Borel-Pade quadrature did not stabilize to 1e-10 by " +
                      std::to_string(max_nodes) + " nodes");
}

}  // namespace

BorelSumResult borel_pade_sum(std::span<const double> coeffs, int m, int n, double lambda) {
  std::vector<double> b(coeffs.size());
  double fact = 1.0;
  for (size_t j = 0; j < coeffs.size(); ++j) {
    if (j > 0) fact *= static_cast<double>(j);
    b[j] = coeffs[j] / fact;
  }
  return borel_pade_from_transform(b, m, n, lambda);
}

BorelSumResult borel_pade_sum(std::span<const Rational> coeffs, int m, int n, double lambda) {
  std::vector<double> b(coeffs.size());
  BigInt fact = 1;
  for (size_t j = 0; j < coeffs.size(); ++j) {
    if (j > 0) fact *= static_cast<long>(j);
    b[j] = to_double(Rational(coeffs[j] / fact));
  }
  return borel_pade_from_transform(b, m, n, lambda);
}

BorelSumResult leading_borel_closed_form(double lambda, double f0) {
  if (lambda == 0.0) throw DomainError("leading_borel_closed_form requires lambda != 0");
  BorelSumResult result;
  result.method = BorelMethod::closed_form_leading;
  // The Borel integrand f0 e^{-t}/(1 + 8 lambda t) has its pole at -1/(8 lambda).
  result.borel_poles = {std::complex<double>(-1.0 / (8.0 * lambda), 0.0)};

  if (std::abs(lambda) < 1e-4) {
    // Shi/Chi arguments exceed 1250 here; sum f0 (-8 lambda)^j j! at its
    // optimal truncation instead (error ~ e^{-1/(8|lambda|)} < 1e-540).
    result.asymptotic_regime = true;
    const double z = -8.0 * lambda;
    double term = 1.0, sum = 1.0;
    for (int j = 1; j < 200; ++j) {
      const double next = term * z * j;
      if (std::abs(next) >= std::abs(term)) break;
      term = next;
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    result.value_real = f0 * sum;
    if (lambda < 0.0) {
      const double a = 1.0 / (8.0 * std::abs(lambda));
      result.value_imag = M_PI * f0 * a * std::exp(-a);  // underflows to 0 harmlessly
    }
    return result;
  }

  if (lambda > 0.0) {
    const double u = 1.0 / (8.0 * lambda);
    // f0 u e^u [Shi(u) - Chi(u)] = f0 u e^u E1(u), evaluated in scaled form:
    // the direct difference cancels catastrophically once u > ~6.
    result.value_real = f0 * u * expint_e1_scaled(u);
    return result;
  }

  const double a = 1.0 / (8.0 * std::abs(lambda));
  // Principal value: f0 a e^{-a} [Shi(a) + Chi(a)] = f0 a e^{-a} Ei(a).
  result.value_real = f0 * a * expint_ei_scaled(a);
  result.value_imag = M_PI * f0 * a * std::exp(-a);  // residue at t = a
  return result;
}

}  // namespace sextic
