#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "diffrep/group.hpp"
#include "diffrep/numeric.hpp"

namespace diffrep {

/// Greedy (Mian–Chowla) Sidon sequence 0, 1, 3, 7, 12, 20, ...
std::vector<std::int64_t> sidon_elements(std::size_t size);

/// The greedy Sidon set as a subset of the integer window [-max, max].
GSet sidon(std::size_t size);

/// A = P + Λ with P = [1, n] and Λ a dilated Sidon set, together with the
/// number of differences represented at least (1 − ε)·2|A|²/|A − A| times.
struct Measure0Witness {
  Rational epsilon;
  std::int64_t n = 0;
  std::vector<std::int64_t> base_lambda;
  std::int64_t multiplier = 1;
  GSet lambda;
  GSet a;
  std::uint64_t diff_size = 0;
  std::uint64_t threshold_count = 0;
  Rational bound;  // 2ε|A − A|
};

Measure0Witness measure0_witness(const Rational& epsilon);

/// Human-readable list of violated witness invariants; empty when all hold.
std::vector<std::string> measure0_invariant_failures(const Measure0Witness& w);

/// Uniform sample without replacement, deterministic in the seed.
GSet random_set(const GroupSpec& group, std::size_t size, std::uint64_t seed);

/// The interval [a, b] (reduced mod n in cyclic groups).
GSet interval_set(const GroupSpec& group, std::int64_t a, std::int64_t b);

/// Portable uniform integer in [0, bound) from a 64-bit engine.
template <typename Engine>
std::uint64_t uniform_below(Engine& engine, std::uint64_t bound) {
  // rejection keeps the result independent of the standard library
  const std::uint64_t limit = bound == 0 ? 0 : (~std::uint64_t{0} - bound + 1) % bound;
  for (;;) {
    const std::uint64_t r = engine();
    if (r >= limit) return r % bound;
  }
}

}  // namespace diffrep
