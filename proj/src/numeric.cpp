#include "diffrep/numeric.hpp"

#include <cctype>

#include "diffrep/error.hpp"

namespace diffrep {

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) throw Error(ErrorKind::InvalidInput, "malformed number '" + std::string(whole) + "'");
  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) throw Error(ErrorKind::InvalidInput, "malformed number '" + std::string(whole) + "'");
  BigInt value = 0;
  for (; pos < text.size(); ++pos) {
    if (!std::isdigit(static_cast<unsigned char>(text[pos])))
      throw Error(ErrorKind::InvalidInput, "malformed number '" + std::string(whole) + "'");
    value = value * 10 + (text[pos] - '0');
  }
  return negative ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(text.substr(0, slash), whole);
    BigInt den = parse_integer(text.substr(slash + 1), whole);
    if (den == 0) throw Error(ErrorKind::InvalidInput, "zero denominator in '" + std::string(whole) + "'");
    return Rational(num, den);
  }

  std::int64_t exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    BigInt ex = parse_integer(text.substr(e + 1), whole);
    if (ex > 4096 || ex < -4096) throw Error(ErrorKind::InvalidInput, "exponent out of range in '" + std::string(whole) + "'");
    exponent = static_cast<std::int64_t>(ex);
    text = text.substr(0, e);
  }
  std::string digits;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view frac = text.substr(dot + 1);
    for (char c : frac)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw Error(ErrorKind::InvalidInput, "malformed number '" + std::string(whole) + "'");
    digits = std::string(text.substr(0, dot)) + std::string(frac);
    if (digits == "+" || digits == "-" || digits.empty())
      throw Error(ErrorKind::InvalidInput, "malformed number '" + std::string(whole) + "'");
    exponent -= static_cast<std::int64_t>(frac.size());
  } else {
    digits = std::string(text);
  }
  Rational value(parse_integer(digits, whole));
  const BigInt scale = ipow(BigInt(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
  return exponent < 0 ? Rational(value / scale) : Rational(value * scale);
}

std::string to_string(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string to_string(const BigInt& value) { return value.str(); }

double to_double(const Rational& value) { return value.convert_to<double>(); }
double to_double(const BigInt& value) { return value.convert_to<double>(); }

BigInt ipow(const BigInt& base, unsigned exponent) { return boost::multiprecision::pow(base, exponent); }

Rational ipow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  Rational b = base;
  while (exponent) {
    if (exponent & 1U) result *= b;
    b *= b;
    exponent >>= 1U;
  }
  return result;
}

BigInt floor(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  BigInt q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

BigInt ceil(const Rational& value) { return -floor(-value); }

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt result = 1;
  for (unsigned i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

BigInt surjections(unsigned k, unsigned j) {
  // inclusion-exclusion over the missed targets
  BigInt total = 0;
  for (unsigned i = 0; i <= j; ++i) {
    BigInt term = binomial(j, i) * ipow(BigInt(j - i), k);
    if (i % 2) total -= term;
    else total += term;
  }
  return total;
}

}  // namespace diffrep
