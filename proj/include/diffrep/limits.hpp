#pragma once

#include <cstdint>
#include <string_view>

namespace diffrep {

/// Enumeration caps. The defaults can be overridden process-wide through the
/// DIFFREP_CAP environment variable: either a bare integer (tuple cap) or a
/// comma-separated list such as "tuples=1e8,symmetric=33,prime=17".
struct Limits {
  std::uint64_t tuple_cap = 50'000'000;       // DFS nodes for higher-order supports
  std::int64_t symmetric_order_cap = 31;      // largest carrier for symmetric-set enumeration
  std::int64_t exhaustive_prime_cap = 13;     // largest p for exhaustive intopt sweeps
  std::uint64_t carrier_cap = 1ULL << 22;     // largest carrier a GSet may live in
};

/// Parses a DIFFREP_CAP-style override on top of `base`.
Limits parse_limits(std::string_view text, Limits base = {});

/// Defaults with DIFFREP_CAP applied (read once).
const Limits& default_limits();

}  // namespace diffrep
