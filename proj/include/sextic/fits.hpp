#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "sextic/hvpt.hpp"

namespace sextic {

struct FitWindow {
  double lo = 0.0;
  double hi = 0.0;  // inclusive; a j-index range or a lambda range
};

struct FitResult {
  std::vector<double> parameters;
  double residual_rms = 0.0;  // rms of (model - data) over the window
  FitWindow window;
  double condition_estimate = 0.0;
  int rejected_samples = 0;  // splitting fit: points dropped below the noise floor
};

// Generic linear least squares by column-pivoted QR (never normal equations:
// the inverse-power bases used here are too ill-conditioned for that).
// Fills parameters, residual_rms and condition_estimate.
FitResult least_squares(const Eigen::MatrixXd& A, const Eigen::VectorXd& y);

// Fit X1^{(j)} / ((-1)^j 8^j j!) to f0 + f1/(j+1) + ... + f_{terms-1}/(j+1)^{terms-1}
// over j in [j_min, j_max]. The ratio is computed as an exact rational before
// conversion. Requires j_min >= 10, terms in 1..6, j_max within the series.
FitResult fit_large_order_moments(const PerturbationSeries& x1, int j_min, int j_max,
                                  int terms);

// Fit |E1^{(j)}| / (8^j j! sqrt(j)) to a0 + a1/j + ... over [j_min, j_max];
// verifies the exact sign pattern (-1)^{j+1} on the rational coefficients first.
FitResult fit_e1_growth(const PerturbationSeries& e1, int j_min, int j_max, int terms = 3);

struct SplittingSample {
  double lambda = 0.0;       // < 0
  double e0_minus_1 = 0.0;   // > 0
};

// Linear fit of ln(E0 - 1) = ln A + B ln|lambda| - C/|lambda|; returns
// parameters {A, B, C} (B pinned to 0 in the constrained variant). Samples
// at or below noise_floor are dropped and counted in rejected_samples.
// Fits ln(E0 - 1) = ln A + B ln|lambda| - C/|lambda| [+ D |lambda|] and returns
// parameters {A, B, C} (plus D when leading_correction is set).  The D column
// models the leading finite-lambda correction; enable it when the goal is the
// asymptotic amplitude A rather than a descriptive fit of the window.
FitResult fit_splitting(std::span<const SplittingSample> samples, bool constrain_b_zero = false,
                        bool leading_correction = false, double noise_floor = 1e-10);

}  // namespace sextic
