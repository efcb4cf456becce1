#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "diffrep/group.hpp"
#include "diffrep/numeric.hpp"

namespace diffrep {

enum class Verdict { holds, violated, vacuous, borderline, not_applicable };

std::string_view to_string(Verdict v) noexcept;
Verdict verdict_from_string(std::string_view text);

/// One side of a checked relation: exact when possible, otherwise a double
/// computed from transcendental factors.
struct Quantity {
  Rational exact = 0;
  double approx = 0.0;
  bool is_exact = true;

  static Quantity of(const Rational& value) { return Quantity{value, to_double(value), true}; }
  static Quantity of(const BigInt& value) { return of(Rational(value)); }
  static Quantity approximate(double value) { return Quantity{0, value, false}; }

  std::string str() const;
};

/// Structured verdict of a checker. `instance` holds everything needed to
/// rerun the check (see replay_check in io.hpp).
struct CheckReport {
  std::string name;
  bool hypotheses_met = false;
  Quantity lhs;
  Quantity rhs;
  std::optional<std::vector<Element>> witness;
  Verdict verdict = Verdict::not_applicable;
  std::vector<std::pair<std::string, std::string>> details;
  nlohmann::ordered_json instance;

  void note(std::string key, std::string value) { details.emplace_back(std::move(key), std::move(value)); }
  void note(std::string key, const BigInt& value) { note(std::move(key), to_string(value)); }
  void note(std::string key, const Rational& value) { note(std::move(key), to_string(value)); }
  std::string detail(std::string_view key) const;
};

/// Relative guard band for comparisons involving floating-point factors.
inline constexpr double kGuardBand = 1e-9;

/// Verdict for `lhs > rhs` or `lhs >= rhs` when at least one side carries
/// floating-point error: within the band neither can be certified.
Verdict compare_guarded(double lhs, double rhs);

}  // namespace diffrep
