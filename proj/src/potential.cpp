#include "sextic/potential.hpp"

#include <cmath>
#include <string>

#include "sextic/errors.hpp"
#include "sextic/quadrature.hpp"

namespace sextic {

const char* to_string(Regime r) {
  switch (r) {
    case Regime::single_well_negative: return "single_well_negative";
    case Regime::triple_well: return "triple_well";
    case Regime::single_well_positive: return "single_well_positive";
    case Regime::double_well: return "double_well";
    case Regime::degenerate_boundary: return "degenerate_boundary";
  }
  return "unknown";
}

double evaluate_potential(double lambda, double x) {
  const double x2 = x * x;
  return ((16.0 * lambda * lambda * x2 + 8.0 * lambda) * x2 + (1.0 - 12.0 * lambda)) * x2;
}

double potential_derivative(double lambda, double x) {
  const double x2 = x * x;
  return ((96.0 * lambda * lambda * x2 + 32.0 * lambda) * x2 + 2.0 * (1.0 - 12.0 * lambda)) * x;
}

double potential_second_derivative(double lambda, double x) {
  const double x2 = x * x;
  return (480.0 * lambda * lambda * x2 + 96.0 * lambda) * x2 + 2.0 * (1.0 - 12.0 * lambda);
}

namespace {

// Values on the x_M branch x^2 = (sqrt(36 lambda + 1) - 2)/(12 lambda): the
// barrier top in the triple-well regime, the outer minimum in the double well.
struct BranchData {
  double x_sq, v, curvature;
};

BranchData x_M_branch(double lambda) {
  const double s = std::sqrt(36.0 * lambda + 1.0);
  BranchData d;
  d.x_sq = (s - 2.0) / (12.0 * lambda);
  d.v = (s - 2.0) * (s - 36.0 * lambda + 1.0) / (54.0 * lambda);
  d.curvature = 8.0 * (36.0 * lambda + 1.0 - 2.0 * s) / 3.0;
  return d;
}

BranchData x_m_branch(double lambda) {
  const double s = std::sqrt(36.0 * lambda + 1.0);
  BranchData d;
  d.x_sq = -(s + 2.0) / (12.0 * lambda);
  d.v = (s + 2.0) * (s + 36.0 * lambda - 1.0) / (54.0 * lambda);
  d.curvature = 8.0 * (36.0 * lambda + 1.0 + 2.0 * s) / 3.0;
  return d;
}

}  // namespace

StationaryPoints stationary_points(double lambda) {
  if (!(lambda > regime_boundary_left && lambda < 0.0))
    throw DomainError("stationary_points requires lambda in (-1/36, 0), got " +
                      std::to_string(lambda));
  const BranchData m = x_m_branch(lambda), M = x_M_branch(lambda);
  StationaryPoints p;
  p.x_m_sq = m.x_sq;
  p.x_M_sq = M.x_sq;
  p.v_at_xm = m.v;
  p.v_at_xM = M.v;
  p.curvature_origin = 2.0 * (1.0 - 12.0 * lambda);
  p.curvature_xm = m.curvature;
  p.curvature_xM = M.curvature;
  return p;
}

PotentialShape classify_potential(double lambda) {
  PotentialShape shape;
  shape.curvature_origin = 2.0 * (1.0 - 12.0 * lambda);
  if (lambda == regime_boundary_left || lambda == 0.0 || lambda == regime_boundary_right) {
    shape.regime = Regime::degenerate_boundary;
  } else if (lambda < regime_boundary_left) {
    shape.regime = Regime::single_well_negative;
  } else if (lambda < 0.0) {
    shape.regime = Regime::triple_well;
    const StationaryPoints p = stationary_points(lambda);
    shape.x_m_sq = p.x_m_sq;
    shape.x_M_sq = p.x_M_sq;
    shape.v_at_xm = p.v_at_xm;
    shape.v_at_xM = p.v_at_xM;
    shape.curvature_xm = p.curvature_xm;
    shape.curvature_xM = p.curvature_xM;
  } else if (lambda < regime_boundary_right) {
    shape.regime = Regime::single_well_positive;
  } else {
    shape.regime = Regime::double_well;
    const BranchData M = x_M_branch(lambda);  // outer minima, curvature now positive
    shape.x_M_sq = M.x_sq;
    shape.v_at_xM = M.v;
    shape.curvature_xM = M.curvature;
  }
  return shape;
}

double exact_ground_state_value(double lambda, double x) {
  if (lambda < 0.0)
    throw DomainError("exact ground state requires lambda >= 0 (not square integrable)");
  const double x2 = x * x;
  return std::exp(-0.5 * x2 - lambda * x2 * x2);
}

double exact_ground_state_second_derivative(double lambda, double x) {
  // phi'' = [ (x + 4 lambda x^3)^2 - 1 - 12 lambda x^2 ] phi
  const double x2 = x * x;
  const double g = x + 4.0 * lambda * x2 * x;
  return (g * g - 1.0 - 12.0 * lambda * x2) * exact_ground_state_value(lambda, x);
}

double ground_state_cutoff(double lambda) {
  if (lambda < 0.0) throw DomainError("ground_state_cutoff requires lambda >= 0");
  // Solve u/2 + lambda u^2 = 40 for u = x^2.
  if (lambda == 0.0) return std::sqrt(80.0);
  const double u = (-0.5 + std::sqrt(0.25 + 160.0 * lambda)) / (2.0 * lambda);
  return std::sqrt(u);
}

double exact_ground_state_norm_sq(double lambda) {
  const double cut = ground_state_cutoff(lambda);
  auto phi_sq = [lambda](double x) {
    const double x2 = x * x;
    return std::exp(-x2 - 2.0 * lambda * x2 * x2);
  };
  // Even integrand; integrate the half line and double.
  return 2.0 * integrate_adaptive_gl(phi_sq, 0.0, cut, 1e-13, 64, 4096);
}

}  // namespace sextic
