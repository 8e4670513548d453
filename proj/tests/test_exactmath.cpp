#include "mlpark/exactmath.hpp"

#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

namespace mlpark {
namespace {

TEST(Binomial, SmallValues) {
  EXPECT_EQ(binomial(0, 0), 1);
  EXPECT_EQ(binomial(4, 2), 6);
  EXPECT_EQ(binomial(2, 3), 0);
  EXPECT_EQ(binomial(10, 0), 1);
  EXPECT_EQ(binomial(10, 10), 1);
  EXPECT_EQ(binomial(52, 5), 2598960);
}

TEST(Binomial, RowSumsArePowersOfTwo) {
  for (std::uint64_t n = 0; n <= 200; ++n) {
    BigInt sum = 0;
    for (std::uint64_t k = 0; k <= n; ++k) {
      sum += binomial(n, k);
    }
    ASSERT_EQ(sum, BigInt(1) << n) << "n=" << n;
  }
}

TEST(Binomial, PascalRecurrence) {
  for (std::uint64_t n = 1; n <= 120; ++n) {
    for (std::uint64_t k = 1; k <= n; ++k) {
      ASSERT_EQ(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
    }
  }
}

TEST(Binomial, ExceedsFixedWidth) {
  // C(200, 100) has 59 decimal digits.
  EXPECT_EQ(binomial(200, 100).str(), "90548514656103281165404177077484163874504589675413336841320");
  EXPECT_EQ(binomial(200, 100), factorial(200) / (factorial(100) * factorial(100)));
}

TEST(RationalPow, Examples) {
  EXPECT_EQ(rational_pow(Rational(1, 3), 0), 1);
  EXPECT_EQ(rational_pow(Rational(1, 3), 3), Rational(1, 27));
  EXPECT_EQ(rational_pow(Rational(2, 3), 2), Rational(4, 9));
  EXPECT_EQ(rational_pow(Rational(-1, 2), 3), Rational(-1, 8));
  EXPECT_EQ(rational_pow(Rational(0), 0), 1);
}

TEST(Rational, CanonicalForm) {
  EXPECT_EQ(Rational(2, 4), Rational(1, 2));
  EXPECT_EQ(to_fraction_string(Rational(2, 4)), "1/2");
  EXPECT_EQ(to_fraction_string(make_rational(3, -6)), "-1/2");
  EXPECT_EQ(to_fraction_string(make_rational(-3, -6)), "1/2");
  EXPECT_THROW(make_rational(1, 0), std::domain_error);
  EXPECT_EQ(to_fraction_string(Rational(0, 5)), "0/1");
  EXPECT_EQ(to_fraction_string(Rational(7)), "7/1");
}

TEST(Rational, RandomizedReciprocalRoundTrip) {
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<long long> dist(-1000000, 1000000);
  for (int i = 0; i < 2000; ++i) {
    long long a = dist(gen);
    long long b = dist(gen);
    if (a == 0 || b == 0) {
      continue;
    }
    const Rational x = make_rational(a, b);
    EXPECT_EQ(x * make_rational(b, a), 1);
    EXPECT_EQ(x + make_rational(-a, b), 0);
    // Scaling numerator and denominator never changes the value.
    const long long c = (dist(gen) % 97) + 98;
    EXPECT_EQ(make_rational(a * c, b * c), x);
    EXPECT_GT(boost::multiprecision::denominator(x), 0);
  }
}

TEST(Decimal, TwelveSignificantDigits) {
  EXPECT_EQ(to_decimal_string(Rational(1, 3)), "0.333333333333");
  EXPECT_EQ(to_decimal_string(Rational(893, 2187)), "0.408321902149");
  EXPECT_EQ(to_decimal_string(0.0), "0");
  EXPECT_EQ(to_decimal_string(-0.0), "0");
  EXPECT_EQ(to_decimal_string(1.0 / 0.0), "inf");
}

TEST(ToDouble, NearestValue) {
  EXPECT_DOUBLE_EQ(to_double(Rational(1, 3)), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(to_double(Rational(11, 27)), 11.0 / 27.0);
}

}  // namespace
}  // namespace mlpark
