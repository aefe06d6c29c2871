#include "latwire/rational.hpp"

#include <stdexcept>

namespace latwire {

std::string to_fraction_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

std::string to_decimal(const Rational& r, int places) {
  BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  const bool negative = num < 0;
  if (negative) num = -num;
  BigInt scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  const BigInt scaled = (2 * num * scale + den) / (2 * den);
  const BigInt whole = scaled / scale;
  std::string frac = BigInt(scaled % scale).str();
  std::string out = (negative && scaled != 0 ? "-" : "") + whole.str();
  if (places > 0) out += "." + std::string(static_cast<std::size_t>(places) - frac.size(), '0') + frac;
  return out;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational parse_fraction(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    const BigInt den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(BigInt(text.substr(0, slash)), den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("not a fraction: " + text);
  }
}

}  // namespace latwire
