#include "sextic/fits.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sextic/errors.hpp"

namespace sextic {

FitResult least_squares(const Eigen::MatrixXd& A, const Eigen::VectorXd& y) {
  if (A.rows() != y.size()) throw UsageError("least_squares: row count mismatch");
  if (A.rows() < A.cols())
    throw UsageError("least_squares: fewer rows than parameters (" +
                     std::to_string(A.rows()) + " < " + std::to_string(A.cols()) + ")");
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  double diag_max = 0.0, diag_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i < A.cols(); ++i) {
    const double d = std::abs(qr.matrixR()(i, i));
    diag_max = std::max(diag_max, d);
    diag_min = std::min(diag_min, d);
  }
  FitResult fit;
  fit.condition_estimate =
      diag_min > 0.0 ? diag_max / diag_min : std::numeric_limits<double>::infinity();
  if (qr.rank() < A.cols() || !std::isfinite(fit.condition_estimate))
    throw DomainError("least-squares basis is rank deficient over this window");
  Eigen::VectorXd x = qr.solve(y);
  fit.parameters.assign(x.data(), x.data() + x.size());
  fit.residual_rms = std::sqrt((A * x - y).squaredNorm() / static_cast<double>(A.rows()));
  return fit;
}

namespace {

// Exact ratio c_j / (8^j j!), sign-stripped by `sign_flip` (+1: as is).
double scaled_ratio(const Rational& c, int j, int sign) {
  BigInt denom = factorial(static_cast<unsigned long>(j));
  mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(), 3 * static_cast<mp_bitcnt_t>(j));
  Rational r(c / denom);
  return sign < 0 ? -to_double(r) : to_double(r);
}

void check_fit_window(const PerturbationSeries& series, int j_min, int j_max, int terms,
                      int max_terms) {
  if (terms < 1 || terms > max_terms)
    throw UsageError("fit needs between 1 and " + std::to_string(max_terms) + " terms");
  if (j_min < 10) throw UsageError("fit window must start at j_min >= 10");
  if (j_max <= j_min)
    throw UsageError("fit window empty: j_max must exceed j_min");
  if (j_max > series.max_order())
    throw UsageError("j_max = " + std::to_string(j_max) +
                     " exceeds available series order " + std::to_string(series.max_order()));
  if (j_max - j_min + 1 < terms)
    throw UsageError("fit window too narrow for " + std::to_string(terms) + " terms");
}

}  // namespace

FitResult fit_large_order_moments(const PerturbationSeries& x1, int j_min, int j_max,
                                  int terms) {
  check_fit_window(x1, j_min, j_max, terms, 6);
  const int rows = j_max - j_min + 1;
  Eigen::MatrixXd A(rows, terms);
  Eigen::VectorXd y(rows);
  for (int i = 0; i < rows; ++i) {
    const int j = j_min + i;
    // r_j = X1^{(j)} / ((-1)^j 8^j j!) -> f0 + f1/(j+1) + ...
    y(i) = scaled_ratio(x1.coefficients[static_cast<size_t>(j)], j, (j % 2 == 0) ? +1 : -1);
    double col = 1.0;
    for (int k = 0; k < terms; ++k) {
      A(i, k) = col;
      col /= (j + 1.0);
    }
  }
  FitResult fit = least_squares(A, y);
  fit.window = {static_cast<double>(j_min), static_cast<double>(j_max)};
  return fit;
}

FitResult fit_e1_growth(const PerturbationSeries& e1, int j_min, int j_max, int terms) {
  check_fit_window(e1, j_min, j_max, terms, 6);
  // The growth law carries the exact sign pattern (-1)^{j+1}; verify it on the
  // rationals before any floating conversion.
  for (int j = 2; j <= j_max; ++j) {
    const int s = sgn(e1.coefficients[static_cast<size_t>(j)]);
    const int expected = (j % 2 == 0) ? -1 : +1;
    if (s != expected)
      throw DomainError("coefficient at order " + std::to_string(j) +
                        " violates the (-1)^{j+1} sign pattern expected of this series");
  }
  const int rows = j_max - j_min + 1;
  Eigen::MatrixXd A(rows, terms);
  Eigen::VectorXd y(rows);
  for (int i = 0; i < rows; ++i) {
    const int j = j_min + i;
    const double ratio =
        scaled_ratio(e1.coefficients[static_cast<size_t>(j)], j, (j % 2 == 0) ? -1 : +1);
    y(i) = ratio / std::sqrt(static_cast<double>(j));
    double col = 1.0;
    for (int k = 0; k < terms; ++k) {
      A(i, k) = col;
      col /= j;
    }
  }
  FitResult fit = least_squares(A, y);
  fit.window = {static_cast<double>(j_min), static_cast<double>(j_max)};
  return fit;
}

FitResult fit_splitting(std::span<const SplittingSample> samples, bool constrain_b_zero,
                        bool leading_correction, double noise_floor) {
  std::vector<SplittingSample> kept;
  int rejected = 0;
  for (const auto& s : samples) {
    if (!(s.lambda < 0.0))
      throw UsageError("splitting samples require lambda < 0");
    if (s.e0_minus_1 > noise_floor)
      kept.push_back(s);
    else
      ++rejected;
  }
  const int params = (constrain_b_zero ? 2 : 3) + (leading_correction ? 1 : 0);
  if (static_cast<int>(kept.size()) < params + 1)
    throw DomainError("splitting fit has only " + std::to_string(kept.size()) +
                      " samples above the noise floor of " + std::to_string(noise_floor));

  Eigen::MatrixXd A(kept.size(), params);
  Eigen::VectorXd y(kept.size());
  double lam_lo = kept.front().lambda, lam_hi = kept.front().lambda;
  for (size_t i = 0; i < kept.size(); ++i) {
    const double al = std::abs(kept[i].lambda);
    // ln(E0 - 1) = ln A + B ln|lambda| - C / |lambda| [+ D |lambda|]
    // The optional D column absorbs the leading finite-lambda correction to
    // the splitting law, so A estimates the asymptotic amplitude even on
    // windows where that correction is a few percent.
    int col = 0;
    A(static_cast<int>(i), col++) = 1.0;
    if (!constrain_b_zero) A(static_cast<int>(i), col++) = std::log(al);
    A(static_cast<int>(i), col++) = -1.0 / al;
    if (leading_correction) A(static_cast<int>(i), col++) = al;
    y(static_cast<int>(i)) = std::log(kept[i].e0_minus_1);
    lam_lo = std::min(lam_lo, kept[i].lambda);
    lam_hi = std::max(lam_hi, kept[i].lambda);
  }
  FitResult fit = least_squares(A, y);
  int col = 0;
  const double a = std::exp(fit.parameters[static_cast<size_t>(col++)]);
  const double b = constrain_b_zero ? 0.0 : fit.parameters[static_cast<size_t>(col++)];
  const double cc = fit.parameters[static_cast<size_t>(col++)];
  const double dd = leading_correction ? fit.parameters[static_cast<size_t>(col)] : 0.0;
  fit.parameters = {a, b, cc};
  if (leading_correction) fit.parameters.push_back(dd);
  fit.window = {lam_lo, lam_hi};
  fit.rejected_samples = rejected;
  return fit;
}

}  // namespace sextic
