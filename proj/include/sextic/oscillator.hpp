#pragma once

#include <string>
#include <vector>

namespace sextic {

// Symmetric banded matrix, lower storage, LAPACK column-major layout:
// element (i, j) with j <= i <= j + kd lives at ab[(i - j) + j * (kd + 1)].
struct SymmetricBanded {
  int n = 0;
  int kd = 0;
  std::vector<double> ab;

  SymmetricBanded() = default;
  SymmetricBanded(int n_, int kd_)
      : n(n_), kd(kd_), ab(static_cast<size_t>(n_) * (kd_ + 1), 0.0) {}

  double at(int i, int j) const {
    if (i < j) std::swap(i, j);
    if (i - j > kd) return 0.0;
    return ab[static_cast<size_t>(i - j) + static_cast<size_t>(j) * (kd + 1)];
  }
  void set(int i, int j, double v) {
    if (i < j) std::swap(i, j);
    ab[static_cast<size_t>(i - j) + static_cast<size_t>(j) * (kd + 1)] = v;
  }
};

// C = A * B for symmetric banded operands that commute in exact arithmetic
// (polynomials in one operator); the result is stored symmetric with
// half-bandwidth kd(A) + kd(B).
SymmetricBanded banded_multiply(const SymmetricBanded& a, const SymmetricBanded& b);

// y = A x.
std::vector<double> banded_matvec(const SymmetricBanded& a, const std::vector<double>& x);

// x^T A y.
double banded_quadratic_form(const SymmetricBanded& a, const std::vector<double>& x,
                             const std::vector<double>& y);

enum class Parity { even, odd };

std::string to_string(Parity p);

// Even/odd blocks of x^2, x^4, x^6 in the harmonic-oscillator basis
// (m = omega = 1, h-bar = 1), each of half-bandwidth 1, 2, 3. Block entry
// (i, j) is the matrix element between oscillator states 2i + p and 2j + p.
// Built from the full-basis ladder representation at enlarged size so every
// retained element is exact.
struct OscillatorOperators {
  int dim = 0;
  Parity parity = Parity::even;
  SymmetricBanded x2;
  SymmetricBanded x4;
  SymmetricBanded x6;
};

// Cached accessor; references stay valid for the life of the process.
const OscillatorOperators& oscillator_operators(Parity parity, int dim);

// <n| x^N |n> computed from explicit powers of the position matrix.
// Slow and only for modest N; used as an independent cross-check.
double harmonic_moment(int n, int power);

}  // namespace sextic
