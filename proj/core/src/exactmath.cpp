#include "mlpark/exactmath.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace mlpark {

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) {
    throw std::domain_error("make_rational: zero denominator");
  }
  return den < 0 ? Rational(-num, -den) : Rational(num, den);
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) {
    return 0;
  }
  k = std::min(k, n - k);
  BigInt result = 1;
  // After step i the accumulator is C(n - k + i, i), so each division is exact.
  for (std::uint64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

BigInt factorial(std::uint64_t n) {
  BigInt result = 1;
  for (std::uint64_t i = 2; i <= n; ++i) {
    result *= i;
  }
  return result;
}

Rational rational_pow(const Rational& base, std::uint64_t exp) {
  BigInt num = boost::multiprecision::pow(boost::multiprecision::numerator(base),
                                          static_cast<unsigned>(exp));
  BigInt den = boost::multiprecision::pow(boost::multiprecision::denominator(base),
                                          static_cast<unsigned>(exp));
  return Rational(num, den);
}

std::string to_fraction_string(const Rational& value) {
  return boost::multiprecision::numerator(value).str() + "/" +
         boost::multiprecision::denominator(value).str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

std::string to_decimal_string(double value, int significant_digits) {
  if (std::isinf(value)) {
    return value > 0 ? "inf" : "-inf";
  }
  if (std::isnan(value)) {
    return "nan";
  }
  if (value == 0.0) {
    value = 0.0;  // drop negative zero
  }
  std::array<char, 64> buffer{};
  std::snprintf(buffer.data(), buffer.size(), "%.*g", significant_digits, value);
  return buffer.data();
}

std::string to_decimal_string(const Rational& value, int significant_digits) {
  return to_decimal_string(to_double(value), significant_digits);
}

}  // namespace mlpark
