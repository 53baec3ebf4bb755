#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "sextic/fits.hpp"
#include "sextic/variational.hpp"

namespace sextic {

struct GridSpec {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  int count = 0;
  bool log_spaced = false;

  // Ascending grid; log spacing distributes points uniformly in ln|lambda|
  // and requires both endpoints nonzero with the same sign.
  std::vector<double> points() const;
};

struct ScanRow {
  double lambda = 0.0;
  int level = 0;  // global index in the energy-sorted spectrum at this lambda
  Parity parity = Parity::even;
  double energy = 0.0;
  double delta_x = 0.0;  // sqrt(<x^2>); <x> vanishes by parity
};

struct ScanTable {
  GridSpec grid;
  int dim = 0;
  int n_levels = 0;
  std::vector<double> lambdas;
  std::vector<ScanRow> rows;  // rows[point * n_levels + level]

  const ScanRow& row(int point, int level) const;
  int n_points() const { return static_cast<int>(lambdas.size()); }
};

// One variational solve per grid point, run concurrently. Requires
// n_levels <= dim / 2 so every reported level is well inside the basis.
ScanTable scan_spectrum(const GridSpec& grid, int n_levels, int dim);

struct AvoidedCrossing {
  int n_low = 0;   // harmonic-limit labels: 2b + parity offset
  int n_high = 0;  // n_low + 2 (same parity block)
  Parity parity = Parity::even;
  double lambda_star = 0.0;
  double min_gap = 0.0;
  // delta_x of both branches at the gap-trace shoulders (the gap maxima
  // flanking the minimum), where the exchanged characters are purest. Their
  // ordering inverts across the crossing.
  double dx_low_before = 0.0;
  double dx_low_after = 0.0;
  double dx_high_before = 0.0;
  double dx_high_after = 0.0;
  bool refined = false;  // false: golden-section refinement failed, grid bracket reported
};

// Gap between blocks b+1 and b of one parity at one lambda; injectable so the
// refinement can be exercised against closed-form gap models in tests. The
// default runs fresh variational solves at the table's dim.
using GapFunction = std::function<double(double lambda, Parity parity, int block)>;

// Interior local minima of the same-parity adjacent-level gap traces that
// (a) dip below both flanking shoulders and (b) swap the delta_x ordering of
// the two branches between those shoulders -- the localization exchange that
// distinguishes an avoided crossing from a mere gap sag. Each detection is
// refined by golden-section minimization of gap_fn (lambda_star to 1e-6, at
// most 40 extra evaluations per crossing).
std::vector<AvoidedCrossing> detect_avoided_crossings(const ScanTable& table,
                                                      GapFunction gap_fn = {});

struct DeltaXPoint {
  double lambda = 0.0;
  double delta_x = 0.0;
  // Set only where the potential has a barrier (triple-well regime):
  // Delta x > x_M marks a side-well dominated state.
  std::optional<bool> side_well_dominated;
};

struct DeltaXJump {
  double lambda_before = 0.0;  // last grid point before the jump
  double lambda_after = 0.0;   // first grid point after it
  double change = 0.0;         // delta_x(after) - delta_x(before)
  bool upward = false;
};

struct DeltaXTrace {
  int level = 0;
  double threshold_factor = 0.0;
  double median_step = 0.0;
  std::vector<DeltaXPoint> points;
  std::vector<DeltaXJump> jumps;
};

// Delta x trace of one level, with jump annotations where a step exceeds
// threshold_factor times the median step magnitude. Consecutive flagged steps
// merge into a single jump event. The level is addressed by its harmonic-limit
// label (parity from n % 2, position n / 2 within the parity block), so the
// trace follows one adiabatic branch and its parity never changes even where
// opposite-parity levels cross.
DeltaXTrace track_delta_x(const ScanTable& table, int level, double threshold_factor = 3.0);

struct SplittingSampleSet {
  std::vector<SplittingSample> samples;
  int rejected = 0;  // grid points whose E0 - 1 fell below the noise floor
  double noise_floor = 0.0;
};

// E0(lambda) - 1 over a lambda < 0 grid, from even-block ground-state solves.
SplittingSampleSet splitting_samples(const GridSpec& grid, int dim,
                                     double noise_floor = 1e-10);

}  // namespace sextic
