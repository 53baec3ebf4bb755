#pragma once

#include <gmpxx.h>

#include <string>

namespace sextic {

// Exact rational arithmetic. mpq_class keeps values canonical (lowest terms,
// positive denominator), which is exactly the storage contract we need for
// series coefficients that grow like 8^j j!.
using Rational = mpq_class;
using BigInt = mpz_class;

// Correctly rounded (to nearest, ties to even) conversion. mpq_get_d truncates,
// which is not good enough for coefficients consumed by the fitting code.
double to_double(const Rational& q);

// "num/den" with the denominator always printed ("-3/1", not "-3").
std::string to_fraction_string(const Rational& q);

// Accepts "p/q" or a bare integer "p"; throws UsageError on anything else.
Rational parse_fraction(const std::string& text);

BigInt factorial(unsigned long n);

}  // namespace sextic
