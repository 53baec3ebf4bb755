#include "sextic/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "sextic/errors.hpp"
#include "sextic/potential.hpp"

namespace sextic {

std::vector<double> GridSpec::points() const {
  if (count < 1) throw UsageError("grid needs at least one point");
  if (count == 1) {
    if (lambda_min != lambda_max)
      throw UsageError("a single-point grid requires lambda_min == lambda_max");
    return {lambda_min};
  }
  if (!(lambda_min < lambda_max))
    throw UsageError("grid requires lambda_min < lambda_max");
  std::vector<double> pts(static_cast<size_t>(count));
  if (log_spaced) {
    if (lambda_min * lambda_max <= 0.0)
      throw UsageError("log spacing requires nonzero endpoints of equal sign");
    const double sign = lambda_min > 0.0 ? 1.0 : -1.0;
    const double t_lo = std::log(std::abs(lambda_min));
    const double t_hi = std::log(std::abs(lambda_max));
    for (int i = 0; i < count; ++i) {
      const double t = t_lo + (t_hi - t_lo) * i / (count - 1);
      pts[static_cast<size_t>(i)] = sign * std::exp(t);
    }
  } else {
    for (int i = 0; i < count; ++i)
      pts[static_cast<size_t>(i)] = lambda_min + (lambda_max - lambda_min) * i / (count - 1);
  }
  pts.front() = lambda_min;
  pts.back() = lambda_max;
  return pts;
}

const ScanRow& ScanTable::row(int point, int level) const {
  if (point < 0 || point >= n_points() || level < 0 || level >= n_levels)
    throw UsageError("scan table index out of range");
  return rows[static_cast<size_t>(point) * n_levels + level];
}

ScanTable scan_spectrum(const GridSpec& grid, int n_levels, int dim) {
  if (n_levels < 1) throw UsageError("scan needs n_levels >= 1");
  if (n_levels > dim / 2)
    throw UsageError("scan requires n_levels <= dim/2 so every level is converged (got " +
                     std::to_string(n_levels) + " levels at dim " + std::to_string(dim) + ")");
  ScanTable table;
  table.grid = grid;
  table.dim = dim;
  table.n_levels = n_levels;
  table.lambdas = grid.points();
  table.rows.resize(table.lambdas.size() * static_cast<size_t>(n_levels));

  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= table.lambdas.size() || failed.load()) return;
      const double lambda = table.lambdas[i];
      try {
        const std::vector<EigenPair> states = solve_spectrum(lambda, dim, n_levels);
        for (int n = 0; n < n_levels; ++n) {
          ScanRow& row = table.rows[i * static_cast<size_t>(n_levels) + n];
          row.lambda = lambda;
          row.level = n;
          row.parity = states[static_cast<size_t>(n)].parity;
          row.energy = states[static_cast<size_t>(n)].energy;
          row.delta_x = std::sqrt(states[static_cast<size_t>(n)].x2_expectation);
        }
      } catch (const Error& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed.exchange(true))
          error = std::make_exception_ptr(
              Error(e.code(), "lambda=" + std::to_string(lambda) + ": " + e.what()));
        return;
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };

  const unsigned n_threads = std::max(1u, std::min<unsigned>(
      std::thread::hardware_concurrency(), static_cast<unsigned>(table.lambdas.size())));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failed.load()) std::rethrow_exception(error);
  return table;
}

namespace {

// Indices of the table rows of one parity at one grid point, in energy order.
std::vector<int> parity_rows(const ScanTable& table, int point, Parity parity) {
  std::vector<int> out;
  for (int n = 0; n < table.n_levels; ++n)
    if (table.row(point, n).parity == parity) out.push_back(n);
  return out;
}

double block_gap(double lambda, Parity parity, int dim, int b) {
  const std::vector<EigenPair> states = solve_eigen(lambda, parity, dim, b + 2);
  return states[static_cast<size_t>(b) + 1].energy - states[static_cast<size_t>(b)].energy;
}

// A crossing's gap minimum sits well below the gap maxima flanking it. The
// threshold is loose on purpose: near-degenerate pairs produce broad, shallow
// minima, and the decisive filter is the character-exchange gate below.
constexpr double kProminence = 0.9;
constexpr double kLambdaTol = 1e-6;
constexpr int kMaxRefineEvals = 40;

// Index of the largest gap value over the closed index range [lo, hi].
int argmax_gap(const std::vector<double>& gap, int lo, int hi) {
  int best = lo;
  for (int i = lo + 1; i <= hi; ++i)
    if (gap[static_cast<size_t>(i)] > gap[static_cast<size_t>(best)]) best = i;
  return best;
}

}  // namespace

std::vector<AvoidedCrossing> detect_avoided_crossings(const ScanTable& table,
                                                      GapFunction gap_fn) {
  if (table.n_points() < 10)
    throw UsageError("crossing detection needs at least 10 grid points");
  if (!gap_fn)
    gap_fn = [dim = table.dim](double lambda, Parity parity, int b) {
      return block_gap(lambda, parity, dim, b);
    };
  std::vector<AvoidedCrossing> crossings;
  for (Parity parity : {Parity::even, Parity::odd}) {
    // Per-point row indices of this parity; the block depth usable across the
    // whole grid is the minimum count.
    std::vector<std::vector<int>> blocks(static_cast<size_t>(table.n_points()));
    size_t depth = std::numeric_limits<size_t>::max();
    for (int i = 0; i < table.n_points(); ++i) {
      blocks[static_cast<size_t>(i)] = parity_rows(table, i, parity);
      depth = std::min(depth, blocks[static_cast<size_t>(i)].size());
    }
    if (depth < 2) continue;
    const int offset = parity == Parity::odd ? 1 : 0;

    for (size_t b = 0; b + 1 < depth; ++b) {
      // Gap trace of adjacent levels within this parity block.
      std::vector<double> gap(static_cast<size_t>(table.n_points()));
      for (int i = 0; i < table.n_points(); ++i) {
        const auto& rows = blocks[static_cast<size_t>(i)];
        gap[static_cast<size_t>(i)] = table.row(i, rows[b + 1]).energy -
                                      table.row(i, rows[b]).energy;
      }
      // Interior local minima of the trace, then the shoulders flanking each:
      // the gap maxima between consecutive minima (or the grid edges).
      std::vector<int> minima;
      for (int i = 1; i + 1 < table.n_points(); ++i)
        if (gap[static_cast<size_t>(i)] < gap[static_cast<size_t>(i) - 1] &&
            gap[static_cast<size_t>(i)] <= gap[static_cast<size_t>(i) + 1])
          minima.push_back(i);
      for (size_t k = 0; k < minima.size(); ++k) {
        const int i = minima[k];
        const double g = gap[static_cast<size_t>(i)];
        const int seg_lo = k == 0 ? 0 : minima[k - 1];
        const int seg_hi = k + 1 == minima.size() ? table.n_points() - 1 : minima[k + 1];
        const int ls = argmax_gap(gap, seg_lo, i);
        const int rs = argmax_gap(gap, i, seg_hi);
        if (g > kProminence * std::min(gap[static_cast<size_t>(ls)],
                                       gap[static_cast<size_t>(rs)]))
          continue;

        // Character-exchange gate: at an avoided crossing the two branches
        // trade localization, so their delta_x ordering inverts from one
        // shoulder to the other. A gap sag without the swap (e.g. a level
        // approaching and retreating without exchanging character) is not a
        // crossing.
        const auto& lrows = blocks[static_cast<size_t>(ls)];
        const auto& rrows = blocks[static_cast<size_t>(rs)];
        const double lo_l = table.row(ls, lrows[b]).delta_x;
        const double hi_l = table.row(ls, lrows[b + 1]).delta_x;
        const double lo_r = table.row(rs, rrows[b]).delta_x;
        const double hi_r = table.row(rs, rrows[b + 1]).delta_x;
        if ((lo_l < hi_l) == (lo_r < hi_r)) continue;

        AvoidedCrossing c;
        c.n_low = 2 * static_cast<int>(b) + offset;
        c.n_high = c.n_low + 2;
        c.parity = parity;
        c.dx_low_before = lo_l;
        c.dx_high_before = hi_l;
        c.dx_low_after = lo_r;
        c.dx_high_after = hi_r;

        // Golden-section minimization of the gap over the grid bracket.
        double lo = table.lambdas[static_cast<size_t>(i) - 1];
        double hi = table.lambdas[static_cast<size_t>(i) + 1];
        const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
        double x1 = hi - invphi * (hi - lo);
        double x2 = lo + invphi * (hi - lo);
        double f1 = gap_fn(x1, parity, static_cast<int>(b));
        double f2 = gap_fn(x2, parity, static_cast<int>(b));
        int evals = 2;
        while (hi - lo > kLambdaTol && evals < kMaxRefineEvals) {
          if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = gap_fn(x1, parity, static_cast<int>(b));
          } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = gap_fn(x2, parity, static_cast<int>(b));
          }
          ++evals;
        }
        if (hi - lo <= kLambdaTol) {
          c.refined = true;
          c.lambda_star = 0.5 * (lo + hi);
          c.min_gap = std::min(f1, f2);
        } else {
          c.refined = false;
          c.lambda_star = table.lambdas[static_cast<size_t>(i)];
          c.min_gap = g;
        }
        crossings.push_back(c);
      }
    }
  }
  std::sort(crossings.begin(), crossings.end(),
            [](const AvoidedCrossing& a, const AvoidedCrossing& b) {
              return a.lambda_star < b.lambda_star;
            });
  return crossings;
}

DeltaXTrace track_delta_x(const ScanTable& table, int level, double threshold_factor) {
  if (level < 0) throw UsageError("track_delta_x: level must be nonnegative");
  if (threshold_factor <= 0.0) throw UsageError("track_delta_x: threshold factor must be > 0");
  const Parity parity = level % 2 == 0 ? Parity::even : Parity::odd;
  const size_t b = static_cast<size_t>(level / 2);

  DeltaXTrace trace;
  trace.level = level;
  trace.threshold_factor = threshold_factor;
  trace.points.reserve(static_cast<size_t>(table.n_points()));
  for (int i = 0; i < table.n_points(); ++i) {
    const std::vector<int> rows = parity_rows(table, i, parity);
    if (b >= rows.size())
      throw UsageError("level " + std::to_string(level) +
                       " is not present across the scan table");
    DeltaXPoint p;
    p.lambda = table.lambdas[static_cast<size_t>(i)];
    p.delta_x = table.row(i, rows[b]).delta_x;
    if (p.lambda > regime_boundary_left && p.lambda < 0.0) {
      const StationaryPoints sp = stationary_points(p.lambda);
      p.side_well_dominated = p.delta_x > std::sqrt(sp.x_M_sq);
    }
    trace.points.push_back(p);
  }

  const size_t n = trace.points.size();
  if (n < 3) return trace;
  std::vector<double> step(n - 1);
  for (size_t i = 0; i + 1 < n; ++i)
    step[i] = trace.points[i + 1].delta_x - trace.points[i].delta_x;
  std::vector<double> mags(step.size());
  for (size_t i = 0; i < step.size(); ++i) mags[i] = std::abs(step[i]);
  std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
  trace.median_step = mags[mags.size() / 2];
  const double threshold = threshold_factor * std::max(trace.median_step, 1e-12);

  for (size_t i = 0; i < step.size();) {
    if (std::abs(step[i]) <= threshold) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j + 1 < step.size() && std::abs(step[j + 1]) > threshold) ++j;
    DeltaXJump jump;
    jump.lambda_before = trace.points[i].lambda;
    jump.lambda_after = trace.points[j + 1].lambda;
    jump.change = trace.points[j + 1].delta_x - trace.points[i].delta_x;
    jump.upward = jump.change > 0.0;
    trace.jumps.push_back(jump);
    i = j + 1;
  }
  return trace;
}

SplittingSampleSet splitting_samples(const GridSpec& grid, int dim, double noise_floor) {
  SplittingSampleSet set;
  set.noise_floor = noise_floor;
  for (double lambda : grid.points()) {
    if (!(lambda < 0.0))
      throw UsageError("splitting samples require lambda < 0 (got " +
                       std::to_string(lambda) + ")");
    const std::vector<EigenPair> states = solve_eigen(lambda, Parity::even, dim, 1);
    const double e0_minus_1 = states.front().energy - 1.0;
    if (e0_minus_1 > noise_floor)
      set.samples.push_back({lambda, e0_minus_1});
    else
      ++set.rejected;
  }
  return set;
}

}  // namespace sextic
