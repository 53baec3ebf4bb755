#pragma once

#include <string>
#include <vector>

#include "sextic/io_format.hpp"
#include "sextic/rational.hpp"

namespace sextic {

// Exact-rational perturbation series for H(lambda) = p^2 + x^2 - 12 lambda x^2
// + 8 lambda x^4 + 16 lambda^2 x^6, produced by hypervirial recurrences plus
// the Hellmann-Feynman theorem. No wavefunctions are ever formed.

enum class SeriesQuantity { energy, moment };

const char* to_string(SeriesQuantity q);

struct PerturbationSeries {
  int state_index = 0;
  SeriesQuantity quantity = SeriesQuantity::energy;
  int moment_power = 0;  // N in <x^{2N}>; 0 for an energy series
  std::vector<Rational> coefficients;  // index = perturbation order p

  int max_order() const { return static_cast<int>(coefficients.size()) - 1; }
};

// Triangular table U_N^{(p)} of moment corrections. Column N at order p is
// stored for N <= cap(p) = 3 + (max_order - p): the recurrence consumes one
// extra column per order step down, and Hellmann-Feynman needs N <= 3 at the
// top, so this cone is exactly what an order-P energy series requires.
class MomentTable {
 public:
  MomentTable() = default;
  MomentTable(int state_index, int max_order, std::vector<std::vector<Rational>> rows);

  int state_index() const { return state_index_; }
  int max_order() const { return max_order_; }
  int cap(int p) const;  // largest stored N at order p

  // U_N^{(p)}; throws DomainError outside the stored cone.
  const Rational& moment(int N, int p) const;

  // Largest order to which the series for <x^{2N}> is complete.
  int max_order_for(int N) const;

  // The <x^{2N}> series up to max_order_for(N).
  PerturbationSeries moment_series(int N) const;

 private:
  int state_index_ = 0;
  int max_order_ = -1;
  std::vector<std::vector<Rational>> rows_;  // rows_[p][N]
};

struct HvptOptions {
  int hard_max_order = 1000;  // resource guard; exceeding it is an explicit failure
};

struct HvptResult {
  PerturbationSeries energy;
  MomentTable moments;
};

// Generate E_n^{(p)} for p = 0..P together with the full moment cone.
// Exact rational arithmetic throughout; for n = 0 the energy series is
// (1, 0, 0, ...) to all orders.
HvptResult generate_series(int n, int P, const HvptOptions& options = {});

// Horner sum of the first `order`+1 terms after correctly rounded conversion.
double evaluate_partial_sum(const PerturbationSeries& series, double lambda, int order);

// Compact one-line form "0:1/2,1:-3/1" (csv) or a JSON object (json);
// both round-trip losslessly through parse_coefficients.
std::string export_coefficients(const PerturbationSeries& series, TextFormat format);
PerturbationSeries parse_coefficients(const std::string& text, TextFormat format);

}  // namespace sextic
