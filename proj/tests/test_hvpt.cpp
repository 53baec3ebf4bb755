#include <catch2/catch.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "sextic/errors.hpp"
#include "sextic/hvpt.hpp"
#include "sextic/oscillator.hpp"
#include "sextic/rational.hpp"

using namespace sextic;

namespace {

std::vector<Rational> rationals(std::initializer_list<long> values) {
  std::vector<Rational> out;
  for (long v : values) out.emplace_back(v);
  return out;
}

}  // namespace

TEST_CASE("rational helpers", "[hvpt]") {
  REQUIRE(to_fraction_string(Rational(-3)) == "-3/1");
  REQUIRE(to_fraction_string(Rational(1, 2)) == "1/2");
  REQUIRE(parse_fraction("-1188/1") == Rational(-1188));
  REQUIRE(parse_fraction("7") == Rational(7));
  REQUIRE(parse_fraction("-15/8") == Rational(-15, 8));
  REQUIRE_THROWS_AS(parse_fraction("abc"), UsageError);
  REQUIRE_THROWS_AS(parse_fraction("1/0"), UsageError);

  // Correct rounding: 1/3 converts to the nearest double.
  REQUIRE(to_double(Rational(1, 3)) == 1.0 / 3.0);
  REQUIRE(to_double(Rational(-15, 8)) == -1.875);
  // A value needing more than 53 bits rounds to nearest, not truncates.
  const Rational big = Rational(BigInt(1) << 60) + 1;
  REQUIRE(to_double(big) == std::ldexp(1.0, 60));

  REQUIRE(factorial(0) == 1);
  REQUIRE(factorial(20) == BigInt("2432902008176640000"));
}

TEST_CASE("golden series coefficients are exact", "[hvpt]") {
  // Ground-state <x^2> series and the first two excited energy series.
  const HvptResult n0 = generate_series(0, 5);
  const PerturbationSeries x1 = n0.moments.moment_series(1);
  REQUIRE(x1.coefficients ==
          std::vector<Rational>{Rational(1, 2), Rational(-3), Rational(48), Rational(-1188),
                                Rational(39168), Rational(-1604448)});
  REQUIRE(n0.energy.coefficients == rationals({1, 0, 0, 0, 0, 0}));

  const HvptResult n1 = generate_series(1, 5);
  REQUIRE(n1.energy.coefficients == rationals({3, 12, -144, 4176, -172800, 8892288}));

  const HvptResult n2 = generate_series(2, 5);
  REQUIRE(n2.energy.coefficients == rationals({5, 48, -864, 36864, -2194560, 158810112}));
}

TEST_CASE("ground-state corrections vanish to high order", "[hvpt]") {
  const HvptResult n0 = generate_series(0, 25);
  REQUIRE(n0.energy.coefficients.front() == Rational(1));
  for (int p = 1; p <= 25; ++p) {
    REQUIRE(n0.energy.coefficients[static_cast<size_t>(p)] == Rational(0));
  }
}

TEST_CASE("order-zero moments match gaussian and ladder oracles", "[hvpt]") {
  // <x^{2N}> in harmonic state n at order 0. Ground state: (2N-1)!! / 2^N.
  const HvptResult n0 = generate_series(0, 6);
  REQUIRE(n0.moments.moment(0, 0) == Rational(1));
  REQUIRE(n0.moments.moment(1, 0) == Rational(1, 2));
  REQUIRE(n0.moments.moment(2, 0) == Rational(3, 4));
  REQUIRE(n0.moments.moment(3, 0) == Rational(15, 8));
  // Normalization column is (1, 0, 0, ...).
  for (int p = 1; p <= 6; ++p) REQUIRE(n0.moments.moment(0, p) == Rational(0));

  // Excited states against the ladder-operator matrix-power oracle.
  for (int n = 0; n <= 4; ++n) {
    const HvptResult series = generate_series(n, 3);
    for (int N = 1; N <= 3; ++N) {
      const double expected = harmonic_moment(n, 2 * N);
      REQUIRE(to_double(series.moments.moment(N, 0)) == Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("hellmann-feynman closure holds identically", "[hvpt]") {
  // (p+1) E^{(p+1)} = -12 U_1^{(p)} + 8 U_2^{(p)} + 32 U_3^{(p-1)}, re-derived
  // from the stored table rather than trusted from generation.
  for (int n : {1, 3}) {
    const HvptResult r = generate_series(n, 12);
    for (int p = 0; p + 1 <= 12; ++p) {
      Rational rhs = Rational(-12) * r.moments.moment(1, p) +
                     Rational(8) * r.moments.moment(2, p);
      if (p >= 1) rhs += Rational(32) * r.moments.moment(3, p - 1);
      REQUIRE(Rational(p + 1) * r.energy.coefficients[static_cast<size_t>(p) + 1] == rhs);
    }
  }
}

TEST_CASE("moment table cone bounds", "[hvpt]") {
  const int P = 10;
  const HvptResult r = generate_series(1, P);
  REQUIRE(r.moments.max_order() == P);
  for (int p = 0; p <= P; ++p) {
    REQUIRE(r.moments.cap(p) >= 3);
    REQUIRE_NOTHROW(r.moments.moment(r.moments.cap(p), p));
    REQUIRE_THROWS_AS(r.moments.moment(r.moments.cap(p) + 1, p), DomainError);
  }
  REQUIRE(r.moments.max_order_for(1) == P);
  const PerturbationSeries u2 = r.moments.moment_series(2);
  REQUIRE(u2.moment_power == 2);
  REQUIRE(u2.max_order() == r.moments.max_order_for(2));
}

TEST_CASE("ground-state x2 series alternates in sign", "[hvpt]") {
  const PerturbationSeries x1 = generate_series(0, 30).moments.moment_series(1);
  for (int j = 1; j <= 30; ++j) {
    const int expected_sign = j % 2 == 0 ? 1 : -1;
    REQUIRE(sgn(x1.coefficients[static_cast<size_t>(j)]) == expected_sign);
  }
}

TEST_CASE("partial sums", "[hvpt]") {
  const PerturbationSeries x1 = generate_series(0, 8).moments.moment_series(1);
  REQUIRE(evaluate_partial_sum(x1, 0.3, 0) == 0.5);
  // Hand sum 1/2 - 3(0.01) + 48(0.01)^2.
  REQUIRE(evaluate_partial_sum(x1, 0.01, 2) == Approx(0.4748).epsilon(1e-14));

  const PerturbationSeries e0 = generate_series(0, 8).energy;
  for (double lambda : {-0.5, 0.0, 0.7}) {
    REQUIRE(evaluate_partial_sum(e0, lambda, 8) == 1.0);
  }
  REQUIRE_THROWS_AS(evaluate_partial_sum(x1, 0.01, 9), UsageError);
}

TEST_CASE("coefficient export and parse round-trip", "[hvpt]") {
  PerturbationSeries small;
  small.state_index = 0;
  small.quantity = SeriesQuantity::moment;
  small.moment_power = 1;
  small.coefficients = {Rational(1, 2), Rational(-3)};
  REQUIRE(export_coefficients(small, TextFormat::csv) == "0:1/2,1:-3/1");

  const PerturbationSeries e1 = generate_series(1, 5).energy;
  const std::string csv = export_coefficients(e1, TextFormat::csv);
  REQUIRE(csv.find("3:4176/1") != std::string::npos);

  for (TextFormat format : {TextFormat::csv, TextFormat::json}) {
    const PerturbationSeries parsed = parse_coefficients(export_coefficients(e1, format), format);
    REQUIRE(parsed.coefficients == e1.coefficients);
  }
  REQUIRE_THROWS_AS(parse_coefficients("not a series", TextFormat::csv), UsageError);
}

TEST_CASE("order limits are enforced", "[hvpt]") {
  REQUIRE_THROWS_AS(generate_series(0, 1001), ResourceError);
  HvptOptions tight;
  tight.hard_max_order = 10;
  REQUIRE_THROWS_AS(generate_series(0, 11, tight), ResourceError);
  REQUIRE_THROWS_AS(generate_series(-1, 5), UsageError);
  REQUIRE_THROWS_AS(generate_series(0, -1), UsageError);
}
