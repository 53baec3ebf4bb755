#include "sextic/quadrature.hpp"

#include <lapacke.h>

#include <cmath>
#include <map>
#include <mutex>

#include "sextic/errors.hpp"

namespace sextic {

namespace {

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix of the orthogonal
// polynomial recurrence; weights are mu0 * (first eigenvector component)^2.
QuadratureRule golub_welsch(std::vector<double> diag, std::vector<double> off, double mu0) {
  const int n = static_cast<int>(diag.size());
  std::vector<double> z(static_cast<size_t>(n) * n);
  lapack_int info =
      LAPACKE_dstev(LAPACK_COL_MAJOR, 'V', n, diag.data(), off.data(), z.data(), n);
  if (info != 0) throw ResourceError("quadrature rule eigensolve failed (dstev)");
  QuadratureRule rule;
  rule.nodes = std::move(diag);  // dstev leaves ascending eigenvalues in diag
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double v0 = z[static_cast<size_t>(i) * n];
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

QuadratureRule make_gauss_legendre(int n) {
  std::vector<double> diag(n, 0.0), off(n > 1 ? n - 1 : 0);
  for (int k = 1; k < n; ++k) off[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
  return golub_welsch(std::move(diag), std::move(off), 2.0);
}

QuadratureRule make_gauss_laguerre(int n) {
  std::vector<double> diag(n), off(n > 1 ? n - 1 : 0);
  for (int k = 0; k < n; ++k) diag[k] = 2.0 * k + 1.0;
  for (int k = 1; k < n; ++k) off[k - 1] = static_cast<double>(k);
  return golub_welsch(std::move(diag), std::move(off), 1.0);
}

const QuadratureRule& cached(std::map<int, QuadratureRule>& cache, std::mutex& m, int n,
                             QuadratureRule (*make)(int)) {
  if (n < 1) throw UsageError("quadrature rule needs at least one node");
  std::lock_guard<std::mutex> lock(m);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make(n)).first;
  return it->second;
}

}  // namespace

const QuadratureRule& gauss_legendre(int n) {
  static std::map<int, QuadratureRule> cache;
  static std::mutex m;
  return cached(cache, m, n, &make_gauss_legendre);
}

QuadratureRule gauss_legendre(int n, double a, double b) {
  const QuadratureRule& base = gauss_legendre(n);
  QuadratureRule rule = base;
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = mid + half * base.nodes[i];
    rule.weights[i] = half * base.weights[i];
  }
  return rule;
}

const QuadratureRule& gauss_laguerre(int n) {
  static std::map<int, QuadratureRule> cache;
  static std::mutex m;
  return cached(cache, m, n, &make_gauss_laguerre);
}

double integrate(const QuadratureRule& rule, const std::function<double(double)>& f) {
  double s = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(rule.nodes[i]);
  return s;
}

double integrate_adaptive_gl(const std::function<double(double)>& f, double a, double b,
                             double rel_tol, int n0, int n_max) {
  double prev = integrate(gauss_legendre(n0, a, b), f);
  for (int n = 2 * n0; n <= n_max; n *= 2) {
    double cur = integrate(gauss_legendre(n, a, b), f);
    if (std::abs(cur - prev) <= rel_tol * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  throw ResourceError("Gauss-Legendre doubling did not converge to requested tolerance");
}

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double fa, double b,
                    double fb, double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0) return left + right;
  if (std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

}  // namespace sextic
