#pragma once

namespace sextic {

inline constexpr double euler_gamma = 0.577215664901532860606512090082402431;

// Hyperbolic sine integral Shi(x) = int_0^x sinh(t)/t dt. Odd; power series
// for |x| <= 50, Ei/E1-based asymptotics beyond; RangeError for |x| > 705
// (result would overflow double). Relative accuracy ~1e-12 or better.
double shi(double x);

// Hyperbolic cosine integral Chi(x) = gamma + ln x + int_0^x (cosh t - 1)/t dt.
// Requires x > 0; same evaluation strategy and range as shi.
double chi(double x);

// e^x E1(x) for x > 0: series below x = 1.5, modified-Lentz continued
// fraction above. Stable for arbitrarily large x (no overflow).
double expint_e1_scaled(double x);

// e^{-x} Ei(x) for x > 0: direct series up to x = 40, optimally truncated
// asymptotic series (1/x) sum k!/x^k beyond (error < 1e-15 there).
double expint_ei_scaled(double x);

}  // namespace sextic
