#include "sextic/pade.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

#include "sextic/errors.hpp"

namespace sextic {

PadeApproximant pade_fit(std::span<const double> coeffs, int m, int n) {
  if (m < 0 || n < 0) throw UsageError("pade orders must be nonnegative");
  if (static_cast<int>(coeffs.size()) < m + n + 1)
    throw UsageError("pade [" + std::to_string(m) + "/" + std::to_string(n) + "] needs " +
                     std::to_string(m + n + 1) + " coefficients, got " +
                     std::to_string(coeffs.size()));
  const auto c = [&](int k) { return k >= 0 ? coeffs[static_cast<size_t>(k)] : 0.0; };

  PadeApproximant approx;
  approx.m = m;
  approx.n = n;
  approx.denominator.assign(static_cast<size_t>(n) + 1, 0.0);
  approx.denominator[0] = 1.0;

  if (n > 0) {
    // The fit is covariant under rescaling the expansion variable: solving with
    // d_j = c_j / s^j and multiplying q_k by s^k afterwards yields the same
    // approximant.  Picking s = max_j |c_j|^(1/j) bounds |d_j| by 1, so the
    // condition estimate below measures genuine (near-)degeneracy of the
    // matching conditions rather than raw coefficient growth.
    double s = 0.0;
    for (int j = 1; j <= m + n; ++j)
      if (c(j) != 0.0)
        s = std::max(s, std::pow(std::abs(c(j)), 1.0 / static_cast<double>(j)));
    if (!(s > 0.0) || !std::isfinite(s)) s = 1.0;
    std::vector<double> pw(static_cast<size_t>(m + n) + 1, 1.0);
    for (int j = 1; j <= m + n; ++j) pw[static_cast<size_t>(j)] = pw[static_cast<size_t>(j) - 1] * s;
    const auto d = [&](int k) { return k >= 0 ? coeffs[static_cast<size_t>(k)] / pw[static_cast<size_t>(k)] : 0.0; };

    // Matching conditions for orders m+1..m+n:
    //   sum_{k=1..n} d_{r-k} q_k = -d_r.
    Eigen::MatrixXd A(n, n);
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i) {
      const int r = m + 1 + i;
      for (int k = 1; k <= n; ++k) A(i, k - 1) = d(r - k);
      rhs(i) = -d(r);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    const auto& R = qr.matrixR();
    double diag_max = 0.0, diag_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      const double dd = std::abs(R(i, i));
      diag_max = std::max(diag_max, dd);
      diag_min = std::min(diag_min, dd);
    }
    // |R| diagonal ratio is a cheap rank-revealing condition estimate.
    const double cond = diag_min > 0.0 ? diag_max / diag_min
                                       : std::numeric_limits<double>::infinity();
    if (qr.rank() < n || cond > 1e12)
      throw DegeneracyError("pade [" + std::to_string(m) + "/" + std::to_string(n) +
                            "] system is degenerate (condition estimate " +
                            std::to_string(cond) + "); try a smaller [m/n]");
    Eigen::VectorXd q = qr.solve(rhs);
    for (int k = 1; k <= n; ++k) approx.denominator[k] = q(k - 1) * pw[static_cast<size_t>(k)];
  }

  approx.numerator.resize(static_cast<size_t>(m) + 1);
  for (int r = 0; r <= m; ++r) {
    double s = 0.0;
    for (int k = 0; k <= std::min(r, n); ++k) s += approx.denominator[k] * c(r - k);
    approx.numerator[r] = s;
  }
  return approx;
}

namespace {

double horner(const std::vector<double>& poly, double x) {
  double s = 0.0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) s = s * x + *it;
  return s;
}

}  // namespace

double pade_eval(const PadeApproximant& approx, double lambda) {
  const double den = horner(approx.denominator, lambda);
  if (std::abs(den) < 1e-14)
    throw PoleError("pade denominator vanishes at lambda = " + std::to_string(lambda));
  return horner(approx.numerator, lambda) / den;
}

std::vector<std::complex<double>> denominator_roots(const PadeApproximant& approx) {
  // Effective degree: drop exactly-zero leading (highest) coefficients.
  int deg = approx.n;
  while (deg > 0 && approx.denominator[static_cast<size_t>(deg)] == 0.0) --deg;
  if (deg == 0) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
  const double lead = approx.denominator[static_cast<size_t>(deg)];
  for (int i = 0; i < deg; ++i) {
    companion(i, deg - 1) = -approx.denominator[static_cast<size_t>(i)] / lead;
    if (i + 1 < deg) companion(i + 1, i) = 1.0;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  std::vector<std::complex<double>> roots;
  roots.reserve(static_cast<size_t>(deg));
  for (int i = 0; i < deg; ++i) roots.push_back(solver.eigenvalues()(i));
  return roots;
}

std::vector<double> reexpand(const PadeApproximant& approx, int count) {
  std::vector<double> t(static_cast<size_t>(count), 0.0);
  for (int r = 0; r < count; ++r) {
    double s = r <= approx.m ? approx.numerator[static_cast<size_t>(r)] : 0.0;
    for (int k = 1; k <= std::min(r, approx.n); ++k)
      s -= approx.denominator[static_cast<size_t>(k)] * t[static_cast<size_t>(r - k)];
    t[static_cast<size_t>(r)] = s;  // denominator[0] == 1
  }
  return t;
}

}  // namespace sextic
