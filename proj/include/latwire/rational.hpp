#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace latwire {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// "p/q" in lowest terms; integers render as "p/1".
std::string to_fraction_string(const Rational& r);

/// Fixed-point decimal rounded half away from zero.
std::string to_decimal(const Rational& r, int places = 6);

double to_double(const Rational& r);

/// Inverse of to_fraction_string; also accepts a bare integer.
Rational parse_fraction(const std::string& text);

}  // namespace latwire
