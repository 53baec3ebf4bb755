#include "sextic/special_functions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sextic/errors.hpp"

namespace sextic {

namespace {

constexpr double series_limit = 50.0;    // power series keep full accuracy here
constexpr double overflow_limit = 705.0; // e^x near the top of double range

// Optimally truncated asymptotic tail sum_{k>=0} k!/x^k, stopped at the
// smallest term; the truncation error is below 1e-15 relative for x >= 40.
double asymptotic_factorial_sum(double x) {
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 400; ++k) {
    const double next = term * k / x;
    if (next >= term) break;  // past the optimal truncation point
    term = next;
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

double ei_series(double x) {  // gamma + ln x + sum x^k/(k k!), all terms positive
  double term = 1.0, sum = 0.0;
  for (int k = 1; k < 500; ++k) {
    term *= x / k;
    const double add = term / k;
    sum += add;
    if (add < 1e-17 * sum) break;
  }
  return euler_gamma + std::log(x) + sum;
}

}  // namespace

double expint_e1_scaled(double x) {
  if (!(x > 0.0)) throw DomainError("expint_e1_scaled requires x > 0");
  if (x < 1.5) {
    // e^x * (-gamma - ln x + sum (-1)^{k+1} x^k/(k k!))
    double term = 1.0, sum = 0.0;
    for (int k = 1; k < 60; ++k) {
      term *= -x / k;
      sum -= term / k;
      if (std::abs(term) < 1e-18) break;
    }
    return std::exp(x) * (-euler_gamma - std::log(x) + sum);
  }
  // Modified Lentz for the continued fraction
  // E1(x) = e^{-x} / (x + 1 - 1/(x + 3 - 4/(x + 5 - 9/(...)))).
  const double tiny = 1e-300;
  double b = x + 1.0, c = 1.0 / tiny, d = 1.0 / b, f = d;
  for (int k = 1; k < 200; ++k) {
    const double a = -static_cast<double>(k) * k;
    b += 2.0;
    d = b + a * d;
    if (std::abs(d) < tiny) d = tiny;
    c = b + a / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return f;
}

double expint_ei_scaled(double x) {
  if (!(x > 0.0)) throw DomainError("expint_ei_scaled requires x > 0");
  if (x <= 40.0) return std::exp(-x) * ei_series(x);
  return asymptotic_factorial_sum(x) / x;
}

namespace {

double shi_series(double x) {  // sum x^{2k+1} / ((2k+1)(2k+1)!)
  double term = x, sum = x;  // k = 0
  const double x2 = x * x;
  for (int k = 0; k < 200; ++k) {
    const double m = 2.0 * k + 1.0;
    term *= x2 * m / ((m + 2.0) * (m + 2.0) * (m + 1.0));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

double chi_series_tail(double x) {  // sum_{k>=1} x^{2k} / ((2k)(2k)!)
  const double x2 = x * x;
  double term = 0.25 * x2, sum = term;  // k = 1: x^2 / (2 * 2!)
  for (int k = 1; k < 200; ++k) {
    const double m = 2.0 * k;
    term *= x2 * m / ((m + 2.0) * (m + 2.0) * (m + 1.0));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

void check_range(double x, const char* name) {
  if (std::abs(x) > overflow_limit)
    throw RangeError(std::string(name) + "(" + std::to_string(x) +
                     ") overflows double range (|x| > 705)");
}

// For series_limit < x <= overflow_limit: Shi = (Ei + E1)/2, Chi = (Ei - E1)/2
// with both exponential integrals from their (fully converged) asymptotics.
void shi_chi_asymptotic(double x, double& shi_out, double& chi_out) {
  const double ei = std::exp(x) * expint_ei_scaled(x);
  const double e1 = std::exp(-x) * expint_e1_scaled(x);
  shi_out = 0.5 * (ei + e1);
  chi_out = 0.5 * (ei - e1);
}

}  // namespace

double shi(double x) {
  check_range(x, "shi");
  const double ax = std::abs(x);
  if (ax <= series_limit) return shi_series(x);
  double s, c;
  shi_chi_asymptotic(ax, s, c);
  return x > 0 ? s : -s;
}

double chi(double x) {
  if (!(x > 0.0)) throw DomainError("chi requires x > 0 (logarithmic singularity at 0)");
  check_range(x, "chi");
  if (x <= series_limit) return euler_gamma + std::log(x) + chi_series_tail(x);
  double s, c;
  shi_chi_asymptotic(x, s, c);
  return c;
}

}  // namespace sextic
