#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace mlpark {

/// Arbitrary-precision signed integer.
using BigInt = boost::multiprecision::cpp_int;

/// Exact fraction, always kept in lowest terms with a positive denominator.
/// Every analytic quantity in the library is carried in this type; floating
/// point appears only at the final evaluation or comparison site.
using Rational = boost::multiprecision::cpp_rational;

/// num/den in lowest terms with the sign moved to the numerator. The
/// two-argument Rational constructor requires den > 0; this accepts any
/// nonzero den. Throws std::domain_error for den == 0.
Rational make_rational(const BigInt& num, const BigInt& den);

/// C(n, k) by the multiplicative formula. Returns 0 for k > n.
BigInt binomial(std::uint64_t n, std::uint64_t k);

BigInt factorial(std::uint64_t n);

/// base^exp exactly; exp == 0 yields 1 (including 0^0).
Rational rational_pow(const Rational& base, std::uint64_t exp);

/// "num/den" in lowest terms; integers print as "n/1".
std::string to_fraction_string(const Rational& value);

/// Nearest double to the exact value.
double to_double(const Rational& value);

/// Decimal rendering with the given number of significant digits ("%.*g").
std::string to_decimal_string(double value, int significant_digits = 12);
std::string to_decimal_string(const Rational& value, int significant_digits = 12);

}  // namespace mlpark
