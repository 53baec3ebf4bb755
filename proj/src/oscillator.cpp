#include "sextic/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include "sextic/errors.hpp"

namespace sextic {

SymmetricBanded banded_multiply(const SymmetricBanded& a, const SymmetricBanded& b) {
  if (a.n != b.n) throw UsageError("banded_multiply: size mismatch");
  SymmetricBanded c(a.n, a.kd + b.kd);
  for (int j = 0; j < c.n; ++j) {
    for (int i = j; i <= std::min(c.n - 1, j + c.kd); ++i) {
      const int k_lo = std::max({0, i - a.kd, j - b.kd});
      const int k_hi = std::min({c.n - 1, i + a.kd, j + b.kd});
      double s = 0.0;
      for (int k = k_lo; k <= k_hi; ++k) s += a.at(i, k) * b.at(k, j);
      c.set(i, j, s);
    }
  }
  return c;
}

std::vector<double> banded_matvec(const SymmetricBanded& a, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != a.n) throw UsageError("banded_matvec: size mismatch");
  std::vector<double> y(x.size(), 0.0);
  for (int i = 0; i < a.n; ++i) {
    double s = 0.0;
    const int j_lo = std::max(0, i - a.kd);
    const int j_hi = std::min(a.n - 1, i + a.kd);
    for (int j = j_lo; j <= j_hi; ++j) s += a.at(i, j) * x[static_cast<size_t>(j)];
    y[static_cast<size_t>(i)] = s;
  }
  return y;
}

double banded_quadratic_form(const SymmetricBanded& a, const std::vector<double>& x,
                             const std::vector<double>& y) {
  const std::vector<double> ay = banded_matvec(a, y);
  double s = 0.0;
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * ay[i];
  return s;
}

std::string to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

namespace {

// Position operator on the first `size` oscillator states: X_{k,k+1} = sqrt((k+1)/2).
SymmetricBanded position_matrix(int size) {
  SymmetricBanded x(size, 1);
  for (int k = 0; k + 1 < size; ++k) x.set(k + 1, k, std::sqrt((k + 1) / 2.0));
  return x;
}

SymmetricBanded parity_block(const SymmetricBanded& full, Parity parity, int dim, int kd) {
  const int offset = parity == Parity::odd ? 1 : 0;
  SymmetricBanded block(dim, kd);
  for (int j = 0; j < dim; ++j)
    for (int i = j; i <= std::min(dim - 1, j + kd); ++i)
      block.set(i, j, full.at(2 * i + offset, 2 * j + offset));
  return block;
}

OscillatorOperators build_operators(Parity parity, int dim) {
  if (dim < 1) throw UsageError("oscillator operator block needs dim >= 1");
  // x^6 couples |f> to |f + 6>; at full size 2*dim + 6 every element between
  // retained states (index <= 2*dim - 1) is free of truncation error.
  const int full = 2 * dim + 6;
  const SymmetricBanded x = position_matrix(full);
  const SymmetricBanded x2 = banded_multiply(x, x);
  const SymmetricBanded x4 = banded_multiply(x2, x2);
  const SymmetricBanded x6 = banded_multiply(x4, x2);
  OscillatorOperators ops;
  ops.dim = dim;
  ops.parity = parity;
  ops.x2 = parity_block(x2, parity, dim, 1);
  ops.x4 = parity_block(x4, parity, dim, 2);
  ops.x6 = parity_block(x6, parity, dim, 3);
  return ops;
}

}  // namespace

const OscillatorOperators& oscillator_operators(Parity parity, int dim) {
  static std::map<std::pair<int, int>, OscillatorOperators> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  const auto key = std::make_pair(parity == Parity::odd ? 1 : 0, dim);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_operators(parity, dim)).first;
  return it->second;
}

double harmonic_moment(int n, int power) {
  if (n < 0 || power < 0) throw UsageError("harmonic_moment: negative argument");
  if (power % 2 == 1) return 0.0;
  if (power == 0) return 1.0;
  const int size = n + power + 2;
  const SymmetricBanded x = position_matrix(size);
  SymmetricBanded acc = x;
  for (int p = 2; p <= power; ++p) acc = banded_multiply(acc, x);
  return acc.at(n, n);
}

}  // namespace sextic
