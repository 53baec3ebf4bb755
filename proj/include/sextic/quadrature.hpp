#pragma once

#include <functional>
#include <vector>

namespace sextic {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre on [-1, 1], computed by Golub-Welsch (symmetric tridiagonal
// eigenproblem of the recurrence coefficients). Rules are cached per size.
const QuadratureRule& gauss_legendre(int n);

// Gauss-Legendre mapped affinely onto [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

// Gauss-Laguerre for the weight e^{-t} on [0, inf). Cached per size.
const QuadratureRule& gauss_laguerre(int n);

double integrate(const QuadratureRule& rule, const std::function<double(double)>& f);

// Gauss-Legendre with node doubling until two successive sizes agree to
// rel_tol (relative to max(1, |result|)). Starts at n0 nodes, caps at n_max.
double integrate_adaptive_gl(const std::function<double(double)>& f, double a, double b,
                             double rel_tol, int n0 = 64, int n_max = 4096);

// Classic adaptive Simpson; used mainly as an independent oracle in tests.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol);

}  // namespace sextic
