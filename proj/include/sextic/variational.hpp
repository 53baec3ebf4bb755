#pragma once

#include <vector>

#include "sextic/oscillator.hpp"

namespace sextic {

// One parity block of H(lambda) = p^2 + (1 - 12 lambda) x^2 + 8 lambda x^4
//                                 + 16 lambda^2 x^6
// in the harmonic-oscillator basis, symmetric banded with half-bandwidth 3.
struct BandedSpectralProblem {
  double lambda = 0.0;
  Parity parity = Parity::even;
  int dim = 0;
  int half_bandwidth = 3;
  SymmetricBanded matrix;
};

BandedSpectralProblem build_hamiltonian(double lambda, Parity parity, int dim);

struct EigenPair {
  int level_index = 0;  // index within the merged spectrum (0 = global ground state)
  Parity parity = Parity::even;
  double energy = 0.0;
  std::vector<double> coefficients;  // basis amplitudes within the parity block
  double x2_expectation = 0.0;
};

// Lowest k states of one parity block. Coefficients are unit-normalized and the
// energies are Rayleigh quotients of the computed vectors (a variational upper
// bound by construction). level_index is the index within the block scaled to
// the full spectrum: 2 * block_index + (parity == odd).
std::vector<EigenPair> solve_eigen(double lambda, Parity parity, int dim, int k);

// Lowest k_total states across both parities, sorted by energy, level_index
// re-assigned by global energy order.
std::vector<EigenPair> solve_spectrum(double lambda, int dim, int k_total);

// <x^N> in a computed state, N in {2, 4, 6}.
double expectation_x_power(const EigenPair& state, int power);

// <p^2> = <H_harmonic> - <x^2> evaluated through the number operator.
double expectation_p2(const EigenPair& state);

// Squared overlap |<psi_var | phi_exact>|^2 / <phi|phi> with the closed-form
// ground state exp(-x^2/2 - lambda x^4) at lambda >= 0.
double overlap_with_exact(const EigenPair& state, double lambda);

}  // namespace sextic
