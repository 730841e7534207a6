#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace jtdet {

using BigInt = boost::multiprecision::cpp_int;
// Always normalized: gcd(|num|, den) = 1, den > 0.
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  return Rational(num, den);
}

inline BigInt numerator_of(const Rational& r) {
  return boost::multiprecision::numerator(r);
}

inline BigInt denominator_of(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

inline BigInt big_pow(std::uint64_t base, unsigned exp) {
  BigInt result = 1;
  for (unsigned i = 0; i < exp; ++i) result *= base;
  return result;
}

// "5/8", or "1" / "0" for integers.
inline std::string to_fraction_string(const Rational& r) {
  if (denominator_of(r) == 1) return numerator_of(r).str();
  return numerator_of(r).str() + "/" + denominator_of(r).str();
}

// Decimal with 12 significant digits.
std::string to_decimal_string(const Rational& r);

double to_double(const Rational& r);

// Parses "a/b" or "a".
Rational parse_rational(const std::string& text);

}  // namespace jtdet
