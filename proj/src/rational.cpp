#include "sextic/rational.hpp"

#include <mpfr.h>

#include <cctype>

#include "sextic/errors.hpp"

namespace sextic {

double to_double(const Rational& q) {
  mpfr_t x;
  mpfr_init2(x, 53);
  mpfr_set_q(x, q.get_mpq_t(), MPFR_RNDN);
  double d = mpfr_get_d(x, MPFR_RNDN);
  mpfr_clear(x);
  return d;
}

std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_fraction(const std::string& text) {
  std::string s;
  s.reserve(text.size());
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw UsageError("empty rational literal");
  // mpq_set_str is permissive about things like "1/0"; validate the pieces.
  Rational q;
  if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
    throw UsageError("not a rational number: '" + text + "'");
  if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
    throw UsageError("zero denominator in rational: '" + text + "'");
  q.canonicalize();
  return q;
}

BigInt factorial(unsigned long n) {
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

}  // namespace sextic
