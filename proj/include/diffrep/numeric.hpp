#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace diffrep {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q", an integer, or a finite decimal such as "0.125" into an
/// exact rational. Throws Error(InvalidInput) on anything else.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& value);
std::string to_string(const BigInt& value);

double to_double(const Rational& value);
double to_double(const BigInt& value);

BigInt ipow(const BigInt& base, unsigned exponent);
Rational ipow(const Rational& base, unsigned exponent);

BigInt floor(const Rational& value);
BigInt ceil(const Rational& value);

/// Number of surjections from a k-set onto a j-set, j!·S(k, j).
BigInt surjections(unsigned k, unsigned j);

BigInt binomial(unsigned n, unsigned k);

}  // namespace diffrep
