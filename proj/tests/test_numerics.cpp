#include "lpbfs/numerics.hpp"

#include <gtest/gtest.h>

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <limits>
#include <random>

using lpbfs::classify_sign;
using lpbfs::ParseError;
using lpbfs::Rational;
using lpbfs::rational_of_string;
using lpbfs::Sign;
using lpbfs::Tolerance;

namespace {

bool canonical(const Rational &r) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::gcd;
  using boost::multiprecision::numerator;
  const auto num = numerator(r);
  const auto den = denominator(r);
  return den > 0 && gcd(boost::multiprecision::abs(num), den) == 1;
}

Rational random_rational(std::mt19937_64 &rng) {
  std::uniform_int_distribution<long> num(-1000, 1000), den(1, 97);
  return Rational(num(rng), den(rng));
}

} // namespace

TEST(ClassifySign, FloatExamples) {
  const Tolerance tol(1e-9);
  EXPECT_EQ(classify_sign(0.0, tol), Sign::Zero);
  EXPECT_EQ(classify_sign(-1.0, tol), Sign::Negative);
  EXPECT_EQ(classify_sign(5e-10, tol), Sign::Zero);
  EXPECT_EQ(classify_sign(-5e-10, tol), Sign::Zero);
  EXPECT_EQ(classify_sign(2e-9, tol), Sign::Positive);
}

TEST(ClassifySign, RationalIgnoresTolerance) {
  const Tolerance tol(1e-3);
  EXPECT_EQ(classify_sign(Rational(1, 1'000'000), tol), Sign::Positive);
  EXPECT_EQ(classify_sign(Rational(-1, 1'000'000), tol), Sign::Negative);
  EXPECT_EQ(classify_sign(Rational(0), tol), Sign::Zero);
}

TEST(ClassifySign, ZeroToleranceIsExact) {
  const auto tol = Tolerance::exact();
  EXPECT_EQ(classify_sign(1e-300, tol), Sign::Positive);
  EXPECT_EQ(classify_sign(-0.0, tol), Sign::Zero);
}

TEST(ClassifySign, NonFiniteIsBreakdown) {
  EXPECT_THROW(classify_sign(std::numeric_limits<double>::quiet_NaN()), lpbfs::NumericalBreakdown);
  EXPECT_THROW(classify_sign(std::numeric_limits<double>::infinity()), lpbfs::NumericalBreakdown);
}

TEST(ClassifySign, Antisymmetric) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-1e-6, 1e-6);
  const Tolerance tol(1e-9);
  for (int k = 0; k < 10'000; ++k) {
    const double x = d(rng);
    if (std::fabs(x) <= tol.eps())
      continue;
    EXPECT_EQ(classify_sign(-x, tol), lpbfs::flip(classify_sign(x, tol))) << x;
  }
}

TEST(Tolerance, RejectsNegative) {
  EXPECT_THROW(Tolerance(-1e-9), lpbfs::ContractViolation);
  EXPECT_NO_THROW(Tolerance(0.0));
  EXPECT_DOUBLE_EQ(Tolerance().eps(), 1e-9);
}

TEST(RationalOfString, Examples) {
  EXPECT_EQ(rational_of_string("3"), Rational(3));
  EXPECT_EQ(rational_of_string("-2/4"), Rational(-1, 2));
  EXPECT_EQ(rational_of_string("0.25"), Rational(1, 4));
  EXPECT_EQ(rational_of_string("0.5"), Rational(1, 2));
  EXPECT_EQ(rational_of_string("+7"), Rational(7));
  EXPECT_EQ(rational_of_string("-1.5"), Rational(-3, 2));
  EXPECT_EQ(rational_of_string(".5"), Rational(1, 2));
  EXPECT_EQ(rational_of_string("1e-3"), Rational(1, 1000));
  EXPECT_EQ(rational_of_string("2.5E2"), Rational(250));
  EXPECT_EQ(rational_of_string("0.1"), Rational(1, 10));
}

TEST(RationalOfString, HugeValuesStayExact) {
  const auto r = rational_of_string("123456789012345678901234567890/3");
  EXPECT_EQ(lpbfs::to_string(r), "41152263004115226300411522630");
}

TEST(RationalOfString, Malformed) {
  for (const char *bad : {"", "abc", "1/0", "1/-2", "1.2.3", "--1", "1e", "/2", "1/", ".",
                          "1 ", " 1", "0x10", "1e+", "2/3/4", "-"})
    EXPECT_THROW(rational_of_string(bad), ParseError) << '"' << bad << '"';
}

TEST(RationalOfString, ResultIsCanonical) {
  EXPECT_TRUE(canonical(rational_of_string("-150/100")));
  EXPECT_EQ(lpbfs::to_string(rational_of_string("-150/100")), "-3/2");
  EXPECT_EQ(lpbfs::to_string(rational_of_string("4/2")), "2");
}

TEST(RationalField, RandomizedAxioms) {
  std::mt19937_64 rng(42);
  for (int k = 0; k < 2'000; ++k) {
    const Rational a = random_rational(rng), b = random_rational(rng);
    const Rational sum = a + b - b;
    EXPECT_EQ(sum, a);
    EXPECT_TRUE(canonical(sum));
    if (b != 0) {
      const Rational q = (a * b) / b;
      EXPECT_EQ(q, a);
      EXPECT_TRUE(canonical(q));
    }
    EXPECT_TRUE(canonical(Rational(a * b)));
  }
}

TEST(RationalText, RoundTrips) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 500; ++k) {
    const Rational a = random_rational(rng);
    EXPECT_EQ(rational_of_string(lpbfs::to_string(a)), a);
  }
}

TEST(DoubleText, ShortestRoundTrip) {
  EXPECT_EQ(lpbfs::to_string(0.5), "0.5");
  EXPECT_EQ(lpbfs::to_string(2.0), "2");
  EXPECT_EQ(rational_of_string(lpbfs::to_string(0.1)), Rational(1, 10));
}

TEST(RationalOfString, LeadingZerosAreDecimal) {
  EXPECT_EQ(rational_of_string("010"), Rational(10));
  EXPECT_EQ(rational_of_string("08/09"), Rational(8, 9));
  EXPECT_EQ(rational_of_string("0.0"), Rational(0));
}
