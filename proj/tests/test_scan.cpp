#include <catch2/catch.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "sextic/errors.hpp"
#include "sextic/hvpt.hpp"
#include "sextic/potential.hpp"
#include "sextic/scan.hpp"
#include "sextic/variational.hpp"

using namespace sextic;

namespace {

// Closed-form two-level avoided crossing: gap sqrt((lambda - a)^2 + g^2),
// with the delta_x characters of the two branches exchanging across a.
ScanTable synthetic_crossing_table(double a, double g, bool exchange) {
  ScanTable table;
  table.grid = {-0.025, -0.005, 41, false};
  table.dim = 100;
  table.n_levels = 2;
  table.lambdas = table.grid.points();
  for (double lambda : table.lambdas) {
    const double gap = std::sqrt((lambda - a) * (lambda - a) + g * g);
    // Two even-block states; characters swap via a logistic switch at a.
    const double s = exchange ? 1.0 / (1.0 + std::exp((lambda - a) / (0.2 * g))) : 0.0;
    ScanRow low;
    low.lambda = lambda;
    low.level = 0;
    low.parity = Parity::even;
    low.energy = -gap / 2.0;
    low.delta_x = 1.0 + 2.0 * s;  // 3 left of a, 1 right of a (if exchanging)
    ScanRow high = low;
    high.level = 2;
    high.energy = gap / 2.0;
    high.delta_x = 3.0 - 2.0 * s;
    table.rows.push_back(low);
    table.rows.push_back(high);
  }
  return table;
}

}  // namespace

TEST_CASE("grid construction", "[scan]") {
  const GridSpec lin{-0.03, -0.003, 10, false};
  const std::vector<double> pts = lin.points();
  REQUIRE(pts.size() == 10);
  REQUIRE(pts.front() == Approx(-0.03).margin(1e-15));
  REQUIRE(pts.back() == Approx(-0.003).margin(1e-15));
  for (size_t i = 1; i < pts.size(); ++i)
    REQUIRE(pts[i] - pts[i - 1] == Approx(0.003).epsilon(1e-10));

  const GridSpec log{-0.03, -0.003, 11, true};
  const std::vector<double> lpts = log.points();
  REQUIRE(lpts.size() == 11);
  REQUIRE(lpts.front() == Approx(-0.03).margin(1e-15));
  REQUIRE(lpts.back() == Approx(-0.003).margin(1e-15));
  for (size_t i = 2; i < lpts.size(); ++i)
    REQUIRE(lpts[i] / lpts[i - 1] == Approx(lpts[1] / lpts[0]).epsilon(1e-10));

  REQUIRE_THROWS_AS((GridSpec{-0.03, -0.003, 0, false}).points(), UsageError);
  REQUIRE_THROWS_AS((GridSpec{-0.003, -0.03, 5, false}).points(), UsageError);
  REQUIRE_THROWS_AS((GridSpec{-0.03, 0.003, 5, true}).points(), UsageError);
  REQUIRE_THROWS_AS((GridSpec{-0.03, -0.003, 1, false}).points(), UsageError);
  REQUIRE_NOTHROW((GridSpec{0.5, 0.5, 1, false}).points());
}

TEST_CASE("scan rows agree with direct solves", "[scan]") {
  const GridSpec grid{-0.02, -0.02, 1, false};
  const ScanTable table = scan_spectrum(grid, 4, 120);
  REQUIRE(table.n_points() == 1);
  const std::vector<EigenPair> direct = solve_spectrum(-0.02, 120, 4);
  for (int level = 0; level < 4; ++level) {
    const ScanRow& row = table.row(0, level);
    const EigenPair& ref = direct[static_cast<size_t>(level)];
    REQUIRE(row.level == level);
    REQUIRE(row.lambda == -0.02);
    REQUIRE(row.energy == Approx(ref.energy).epsilon(1e-12));
    REQUIRE(row.delta_x == Approx(std::sqrt(ref.x2_expectation)).epsilon(1e-12));
    REQUIRE(row.parity == ref.parity);
  }

  // Near lambda = 0 the levels track their perturbation series: at
  // lambda = -0.001 the truncated asymptotic series is accurate to ~1e-10.
  const ScanTable tiny = scan_spectrum({-0.001, -0.001, 1, false}, 2, 100);
  const PerturbationSeries e0 = generate_series(0, 6).energy;
  const PerturbationSeries e1 = generate_series(1, 6).energy;
  REQUIRE(tiny.row(0, 0).energy == Approx(evaluate_partial_sum(e0, -0.001, 6)).margin(1e-8));
  REQUIRE(tiny.row(0, 1).energy == Approx(evaluate_partial_sum(e1, -0.001, 6)).margin(1e-8));

  REQUIRE_THROWS_AS(scan_spectrum(grid, 61, 120), UsageError);
  REQUIRE_THROWS_AS(table.row(1, 0), UsageError);
  REQUIRE_THROWS_AS(table.row(0, 4), UsageError);
}

TEST_CASE("triplet clustering in the weak-coupling tail", "[scan]") {
  // Near lambda -> 0^- the triple-well levels (2, 3, 4) coalesce far below
  // the gap to their neighbors.
  const ScanTable table = scan_spectrum({-0.003, -0.003, 1, false}, 6, 200);
  const double e1 = table.row(0, 1).energy;
  const double e2 = table.row(0, 2).energy;
  const double e3 = table.row(0, 3).energy;
  const double e4 = table.row(0, 4).energy;
  const double e5 = table.row(0, 5).energy;
  const double spread = e4 - e2;
  REQUIRE(spread < 0.02 * (e2 - e1));
  REQUIRE(spread < 0.02 * (e5 - e4));
  REQUIRE(e3 >= e2);
  REQUIRE(e4 >= e3);
}

TEST_CASE("synthetic avoided crossing is detected and refined", "[scan]") {
  const double a = -0.015, g = 2e-3;
  const ScanTable table = synthetic_crossing_table(a, g, true);
  const GapFunction gap_fn = [a, g](double lambda, Parity, int) {
    return std::sqrt((lambda - a) * (lambda - a) + g * g);
  };
  const std::vector<AvoidedCrossing> found = detect_avoided_crossings(table, gap_fn);
  REQUIRE(found.size() == 1);
  const AvoidedCrossing& c = found[0];
  REQUIRE(c.n_low == 0);
  REQUIRE(c.n_high == 2);
  REQUIRE(c.parity == Parity::even);
  REQUIRE(c.refined);
  REQUIRE(c.lambda_star == Approx(a).margin(2e-6));
  REQUIRE(c.min_gap == Approx(g).margin(1e-8));
  // Characters exchange: the lower branch is wide before, narrow after.
  REQUIRE(c.dx_low_before > c.dx_high_before);
  REQUIRE(c.dx_low_after < c.dx_high_after);

  // Same gap trace without the character exchange: a sag, not a crossing.
  const ScanTable sag = synthetic_crossing_table(a, g, false);
  REQUIRE(detect_avoided_crossings(sag, gap_fn).empty());

  ScanTable short_table = synthetic_crossing_table(a, g, true);
  short_table.lambdas.resize(5);
  short_table.rows.resize(10);
  REQUIRE_THROWS_AS(detect_avoided_crossings(short_table, gap_fn), UsageError);
}

TEST_CASE("physical crossings near the triple-well regime", "[scan]") {
  // The (3,5) and (4,6) crossings sit inside [-0.03, -0.003] and neither
  // involves the ground state. The window must extend past -0.02 so that the
  // left shoulder lies outside the broad character-exchange region of (3,5).
  const ScanTable table = scan_spectrum({-0.03, -0.003, 30, true}, 10, 150);
  const std::vector<AvoidedCrossing> found = detect_avoided_crossings(table);
  const auto has_pair = [&](int lo, int hi) {
    return std::any_of(found.begin(), found.end(), [&](const AvoidedCrossing& c) {
      return c.n_low == lo && c.n_high == hi;
    });
  };
  REQUIRE(has_pair(3, 5));
  REQUIRE(has_pair(4, 6));
  for (const AvoidedCrossing& c : found) {
    REQUIRE(c.n_low >= 2);
    REQUIRE(c.min_gap > 0.0);
    REQUIRE(c.lambda_star > -0.03);
    REQUIRE(c.lambda_star < -0.003);
  }
  // Refined locations agree with the full-grid analysis to the coarse step.
  for (const AvoidedCrossing& c : found) {
    if (c.n_low == 3) REQUIRE(c.lambda_star == Approx(-0.008647).margin(1e-3));
    if (c.n_low == 4) REQUIRE(c.lambda_star == Approx(-0.009134).margin(1e-3));
  }
}

TEST_CASE("delta-x jump annotation on synthetic traces", "[scan]") {
  ScanTable table;
  table.grid = {-0.02, -0.001, 20, false};
  table.dim = 100;
  table.n_levels = 1;
  table.lambdas = table.grid.points();
  for (int i = 0; i < 20; ++i) {
    ScanRow row;
    row.lambda = table.lambdas[static_cast<size_t>(i)];
    row.level = 0;
    row.parity = Parity::even;
    row.energy = 1.0;
    // Gentle drift with one sharp step of +2 spread over two grid intervals
    // (the merge rule must report a single jump event).
    row.delta_x = 1.0 + 0.01 * i + (i >= 10 ? 2.0 : i == 9 ? 1.0 : 0.0);
    table.rows.push_back(row);
  }
  const DeltaXTrace trace = track_delta_x(table, 0);
  REQUIRE(trace.level == 0);
  REQUIRE(trace.points.size() == 20);
  REQUIRE(trace.median_step == Approx(0.01).epsilon(1e-12));
  REQUIRE(trace.jumps.size() == 1);
  REQUIRE(trace.jumps[0].upward);
  REQUIRE(trace.jumps[0].change == Approx(2.0).margin(0.03));
  REQUIRE(trace.jumps[0].lambda_before == Approx(table.lambdas[8]).margin(1e-15));
  REQUIRE(trace.jumps[0].lambda_after == Approx(table.lambdas[10]).margin(1e-15));

  // A huge threshold suppresses the annotation entirely.
  REQUIRE(track_delta_x(table, 0, 500.0).jumps.empty());

  REQUIRE_THROWS_AS(track_delta_x(table, -1), UsageError);
  REQUIRE_THROWS_AS(track_delta_x(table, 2), UsageError);
  REQUIRE_THROWS_AS(track_delta_x(table, 0, 0.0), UsageError);
}

TEST_CASE("side-well annotation follows the barrier geometry", "[scan]") {
  const ScanTable table = scan_spectrum({-0.01, -0.01, 1, false}, 8, 200);
  // The ground state stays in the central well (delta_x ~ 0.73, barrier top
  // x_M = sqrt(10)); level 3 lives in the side wells (delta_x ~ x_m ~ 4.8).
  const DeltaXTrace k0 = track_delta_x(table, 0);
  REQUIRE(k0.points[0].side_well_dominated.has_value());
  REQUIRE_FALSE(k0.points[0].side_well_dominated.value());
  const DeltaXTrace k3 = track_delta_x(table, 3);
  REQUIRE(k3.points[0].side_well_dominated.has_value());
  REQUIRE(k3.points[0].side_well_dominated.value());

  // Outside the triple-well regime there is no barrier to speak of.
  const ScanTable single = scan_spectrum({-0.05, -0.05, 1, false}, 2, 200);
  const DeltaXTrace s0 = track_delta_x(single, 0);
  REQUIRE_FALSE(s0.points[0].side_well_dominated.has_value());
}

TEST_CASE("splitting samples from the scan", "[scan]") {
  const GridSpec grid{-0.03, -0.012, 8, false};
  const SplittingSampleSet set = splitting_samples(grid, 150);
  REQUIRE(set.samples.size() == 8);
  REQUIRE(set.rejected == 0);
  for (const SplittingSample& s : set.samples) {
    REQUIRE(s.lambda < 0.0);
    REQUIRE(s.e0_minus_1 > 0.0);
  }
  // Spot check one sample against a direct solve.
  const double e0 = solve_eigen(set.samples[0].lambda, Parity::even, 150, 1)[0].energy;
  REQUIRE(set.samples[0].e0_minus_1 == Approx(e0 - 1.0).epsilon(1e-12));

  // An absurd floor rejects everything.
  const SplittingSampleSet floored = splitting_samples(grid, 150, 1.0);
  REQUIRE(floored.samples.empty());
  REQUIRE(floored.rejected == 8);

  REQUIRE_THROWS_AS(splitting_samples({0.01, 0.05, 5, false}, 150), UsageError);
}
