#pragma once

#include <optional>

namespace sextic {

// V(lambda, x) = (1 - 12 lambda) x^2 + 8 lambda x^4 + 16 lambda^2 x^6.
// Shape thresholds: single well left of -1/36, three wells on (-1/36, 0),
// single well on (0, 1/12), double well right of 1/12.

enum class Regime {
  single_well_negative,  // lambda < -1/36
  triple_well,           // -1/36 < lambda < 0
  single_well_positive,  // 0 < lambda < 1/12
  double_well,           // lambda > 1/12
  degenerate_boundary,   // lambda in {-1/36, 0, 1/12}: stationary-point formulas collapse
};

const char* to_string(Regime r);

inline constexpr double regime_boundary_left = -1.0 / 36.0;
inline constexpr double regime_boundary_right = 1.0 / 12.0;

// Nonzero stationary points of the triple-well regime: the side-well minimum
// x_m (outer) and the barrier top x_M (inner), stored as squared positions.
struct StationaryPoints {
  double x_m_sq = 0;  // -(sqrt(36 lambda + 1) + 2) / (12 lambda)
  double x_M_sq = 0;  // (sqrt(36 lambda + 1) - 2) / (12 lambda)
  double v_at_xm = 0;
  double v_at_xM = 0;
  double curvature_origin = 0;  // V''(0) = 2 (1 - 12 lambda)
  double curvature_xm = 0;      // V''(x_m) > 0
  double curvature_xM = 0;      // V''(x_M) < 0
};

struct PotentialShape {
  Regime regime = Regime::degenerate_boundary;
  std::optional<double> x_m_sq;
  std::optional<double> x_M_sq;
  std::optional<double> v_at_xm;
  std::optional<double> v_at_xM;
  double curvature_origin = 0;
  std::optional<double> curvature_xm;
  std::optional<double> curvature_xM;
};

double evaluate_potential(double lambda, double x);
double potential_derivative(double lambda, double x);
double potential_second_derivative(double lambda, double x);

// Regime plus whatever stationary-point data exists there. In the double-well
// regime only the outer minima (the x_M branch, now a minimum) are real.
PotentialShape classify_potential(double lambda);

// Closed-form triple-well data; DomainError outside lambda in (-1/36, 0).
StationaryPoints stationary_points(double lambda);

// Exact ground state phi(x) = exp(-x^2/2 - lambda x^4), energy 1, for
// lambda >= 0 only (not square integrable otherwise).
double exact_ground_state_value(double lambda, double x);
// Analytic phi''(x), for Hamiltonian-identity checks.
double exact_ground_state_second_derivative(double lambda, double x);
// Truncation point: solves x^2/2 + lambda x^4 = 40, so the integrand tail of
// phi^2 is below 1e-16 of its peak beyond x_cut.
double ground_state_cutoff(double lambda);
// integral of phi^2 over the real line, relative accuracy 1e-12.
double exact_ground_state_norm_sq(double lambda);

}  // namespace sextic
