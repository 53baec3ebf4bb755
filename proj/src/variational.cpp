#include "sextic/variational.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "sextic/errors.hpp"
#include "sextic/potential.hpp"
#include "sextic/quadrature.hpp"

namespace sextic {

BandedSpectralProblem build_hamiltonian(double lambda, Parity parity, int dim) {
  if (dim < 1) throw UsageError("build_hamiltonian needs dim >= 1");
  const OscillatorOperators& ops = oscillator_operators(parity, dim);
  const int offset = parity == Parity::odd ? 1 : 0;
  BandedSpectralProblem problem;
  problem.lambda = lambda;
  problem.parity = parity;
  problem.dim = dim;
  problem.matrix = SymmetricBanded(dim, problem.half_bandwidth);
  SymmetricBanded& h = problem.matrix;
  for (int j = 0; j < dim; ++j) {
    for (int i = j; i <= std::min(dim - 1, j + 3); ++i) {
      double v = -12.0 * lambda * ops.x2.at(i, j) + 8.0 * lambda * ops.x4.at(i, j) +
                 16.0 * lambda * lambda * ops.x6.at(i, j);
      if (i == j) v += 2.0 * (2 * i + offset) + 1.0;  // p^2 + x^2 on state 2i + offset
      h.set(i, j, v);
    }
  }
  return problem;
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

std::vector<EigenPair> solve_eigen(double lambda, Parity parity, int dim, int k) {
  if (k < 1 || k > dim)
    throw UsageError("requested " + std::to_string(k) + " states from a block of size " +
                     std::to_string(dim));
  const BandedSpectralProblem problem = build_hamiltonian(lambda, parity, dim);
  const int kd = problem.half_bandwidth;

  std::vector<double> ab = problem.matrix.ab;  // dsbev destroys its input
  std::vector<double> w(static_cast<size_t>(dim));
  std::vector<double> z(static_cast<size_t>(dim) * dim);
  const lapack_int info =
      LAPACKE_dsbev(LAPACK_COL_MAJOR, 'V', 'L', dim, kd, ab.data(), kd + 1, w.data(),
                    z.data(), dim);
  if (info < 0) throw UsageError("eigensolver rejected argument " + std::to_string(-info));
  if (info > 0)
    throw ResourceError("eigensolver failed to converge (" + std::to_string(info) +
                        " off-diagonal elements did not reduce)");

  const OscillatorOperators& ops = oscillator_operators(parity, dim);
  const int offset = parity == Parity::odd ? 1 : 0;
  std::vector<EigenPair> states;
  states.reserve(static_cast<size_t>(k));
  for (int b = 0; b < k; ++b) {
    EigenPair s;
    s.level_index = 2 * b + offset;
    s.parity = parity;
    s.coefficients.assign(z.begin() + static_cast<size_t>(b) * dim,
                          z.begin() + static_cast<size_t>(b + 1) * dim);
    const double nrm = std::sqrt(dot(s.coefficients, s.coefficients));
    for (double& c : s.coefficients) c /= nrm;
    // Rayleigh quotient of the computed vector: restores the variational bound
    // and squares the eigensolver's residual error.
    s.energy = banded_quadratic_form(problem.matrix, s.coefficients, s.coefficients);
    s.x2_expectation = banded_quadratic_form(ops.x2, s.coefficients, s.coefficients);
    states.push_back(std::move(s));
  }
  return states;
}

std::vector<EigenPair> solve_spectrum(double lambda, int dim, int k_total) {
  if (k_total < 1) throw UsageError("solve_spectrum needs k_total >= 1");
  if (k_total > 2 * dim)
    throw UsageError("requested " + std::to_string(k_total) + " levels but dim " +
                     std::to_string(dim) + " provides only " + std::to_string(2 * dim));
  const int k_each = std::min(dim, k_total);
  std::vector<EigenPair> merged = solve_eigen(lambda, Parity::even, dim, k_each);
  std::vector<EigenPair> odd = solve_eigen(lambda, Parity::odd, dim, k_each);
  merged.insert(merged.end(), std::make_move_iterator(odd.begin()),
                std::make_move_iterator(odd.end()));
  std::stable_sort(merged.begin(), merged.end(),
                   [](const EigenPair& a, const EigenPair& b) { return a.energy < b.energy; });
  if (static_cast<int>(merged.size()) > k_total) merged.resize(static_cast<size_t>(k_total));
  for (size_t i = 0; i < merged.size(); ++i) merged[i].level_index = static_cast<int>(i);
  return merged;
}

double expectation_x_power(const EigenPair& state, int power) {
  const int dim = static_cast<int>(state.coefficients.size());
  const OscillatorOperators& ops = oscillator_operators(state.parity, dim);
  const SymmetricBanded* op = nullptr;
  switch (power) {
    case 2: op = &ops.x2; break;
    case 4: op = &ops.x4; break;
    case 6: op = &ops.x6; break;
    default: throw UsageError("expectation_x_power supports powers 2, 4, 6");
  }
  return banded_quadratic_form(*op, state.coefficients, state.coefficients);
}

double expectation_p2(const EigenPair& state) {
  const int offset = state.parity == Parity::odd ? 1 : 0;
  double h0 = 0.0;  // <p^2 + x^2>
  for (size_t i = 0; i < state.coefficients.size(); ++i) {
    const double f = 2.0 * static_cast<double>(i) + offset;
    h0 += (2.0 * f + 1.0) * state.coefficients[i] * state.coefficients[i];
  }
  return h0 - expectation_x_power(state, 2);
}

double overlap_with_exact(const EigenPair& state, double lambda) {
  if (lambda < 0.0)
    throw DomainError("the closed-form ground state is normalizable only for lambda >= 0");
  if (state.parity == Parity::odd) return 0.0;  // the exact state is even
  const double cut = ground_state_cutoff(lambda);
  const double norm_sq = exact_ground_state_norm_sq(lambda);
  const int dim = static_cast<int>(state.coefficients.size());
  const int f_max = 2 * (dim - 1);

  auto projected = [&](double x) {
    // Normalized oscillator functions via the stable two-term recurrence,
    // accumulating sum_b c_b u_{2b}(x) in one sweep.
    const double phi = exact_ground_state_value(lambda, x);
    double u_prev = 0.0;
    double u = std::exp(-0.5 * x * x) / std::pow(M_PI, 0.25);
    double acc = state.coefficients[0] * u;
    for (int f = 0; f < f_max; ++f) {
      const double u_next =
          x * std::sqrt(2.0 / (f + 1)) * u - std::sqrt(static_cast<double>(f) / (f + 1)) * u_prev;
      u_prev = u;
      u = u_next;
      if ((f + 1) % 2 == 0) acc += state.coefficients[static_cast<size_t>((f + 1) / 2)] * u;
    }
    return acc * phi;
  };

  // The integrand oscillates on the scale of the highest retained basis
  // function, so start dense and double until stable.
  double previous = 0.0;
  for (int n = 256; n <= 16384; n *= 2) {
    const QuadratureRule rule = gauss_legendre(n, 0.0, cut);
    double integral = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i)
      integral += rule.weights[i] * projected(rule.nodes[i]);
    if (n > 256 && std::abs(integral - previous) <= 1e-11 * std::max(1.0, std::abs(integral))) {
      const double inner = 2.0 * integral;  // even integrand
      return inner * inner / norm_sq;
    }
    previous = integral;
  }
  throw ResourceError("overlap integral did not stabilize under node doubling");
}

}  // namespace sextic
