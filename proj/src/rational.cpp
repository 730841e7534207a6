#include "jtdet/rational.hpp"

#include "jtdet/error.hpp"

#include <cstdio>

namespace jtdet {

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_decimal_string(const Rational& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", to_double(r));
  return buf;
}

Rational parse_rational(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(BigInt(text));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + text + "'");
    return Rational(BigInt(text.substr(0, slash)), den);
  } catch (const std::runtime_error&) {
    throw ParseError("malformed rational '" + text + "'");
  }
}

}  // namespace jtdet
