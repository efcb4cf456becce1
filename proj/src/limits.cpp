#include "diffrep/limits.hpp"

#include <cstdlib>
#include <string>

#include "diffrep/error.hpp"
#include "diffrep/numeric.hpp"

namespace diffrep {

namespace {

std::uint64_t parse_count(std::string_view text) {
  Rational value = parse_rational(text);
  if (value <= 0 || boost::multiprecision::denominator(value) != 1)
    throw Error(ErrorKind::InvalidInput, "cap must be a positive integer: '" + std::string(text) + "'");
  return boost::multiprecision::numerator(value).convert_to<std::uint64_t>();
}

}  // namespace

Limits parse_limits(std::string_view text, Limits base) {
  if (text.empty()) return base;
  if (text.find('=') == std::string_view::npos) {
    base.tuple_cap = parse_count(text);
    return base;
  }
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw Error(ErrorKind::InvalidInput, "bad cap entry '" + std::string(item) + "'");
    const std::string_view key = item.substr(0, eq);
    const std::uint64_t value = parse_count(item.substr(eq + 1));
    if (key == "tuples") base.tuple_cap = value;
    else if (key == "symmetric") base.symmetric_order_cap = static_cast<std::int64_t>(value);
    else if (key == "prime") base.exhaustive_prime_cap = static_cast<std::int64_t>(value);
    else if (key == "carrier") base.carrier_cap = value;
    else throw Error(ErrorKind::InvalidInput, "unknown cap '" + std::string(key) + "'");
  }
  return base;
}

const Limits& default_limits() {
  static const Limits limits = [] {
    const char* env = std::getenv("DIFFREP_CAP");
    return env ? parse_limits(env) : Limits{};
  }();
  return limits;
}

}  // namespace diffrep
