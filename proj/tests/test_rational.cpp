#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "klncc/harness.hpp"
#include "klncc/rational.hpp"

using klncc::Rational;

TEST_CASE("normalization: lowest terms, positive denominator, canonical zero") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, 4) == Rational(-1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(0, 7).den() == 1);
  CHECK(Rational(0, -7) == Rational(0));
  CHECK_THROWS_AS(Rational(1, 0), klncc::Error);
}

TEST_CASE("exact arithmetic") {
  CHECK(Rational(1, 8) + Rational(0) + Rational(1, 8) == Rational(1, 4));
  CHECK(Rational(3) + Rational(-6) + Rational(3) == Rational(0));
  CHECK(Rational(1, 3) - Rational(1, 4) == Rational(1, 12));
  CHECK(-Rational(3, 7) == Rational(-3, 7));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
}

TEST_CASE("comparisons are total and exact") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(3, 4) <= Rational(3, 4));
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, 1000000007LL) > Rational(0));
  // m/(m+1) < 1, the inequality the feasibility argument rides on
  for (int m = 1; m <= 50; ++m) CHECK(Rational(m, m + 1) < Rational(1));
}

TEST_CASE("parse and print round-trip") {
  CHECK(Rational::parse("-3/4").str() == "-3/4");
  CHECK(Rational::parse("5") == Rational(5));
  CHECK(Rational::parse("6/4").str() == "3/2");
  CHECK_THROWS_AS(Rational::parse("1/0"), klncc::Error);
  CHECK_THROWS_AS(Rational::parse("x"), klncc::Error);
  CHECK_THROWS_AS(Rational::parse("1/"), klncc::Error);
  CHECK_THROWS_AS(Rational::parse(""), klncc::Error);
}

TEST_CASE("property: addition commutes and stays normalized") {
  klncc::Rng rng(20240817);
  for (int i = 0; i < 2000; ++i) {
    Rational a(rng.below(41) - 20, 1 + rng.below(12));
    Rational b(rng.below(41) - 20, 1 + rng.below(12));
    Rational s1 = a + b, s2 = b + a;
    CHECK(s1 == s2);
    CHECK(s1.den() > 0);
    CHECK(std::gcd(s1.num() < 0 ? -s1.num() : s1.num(), s1.den()) == 1);
  }
}
