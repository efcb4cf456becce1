#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "diffrep/numeric.hpp"
#include "diffrep/report.hpp"

namespace diffrep {

/// Nonnegative function on [0, 1], equal to values[i] on [i/N, (i+1)/N).
class StepFunction {
 public:
  /// Throws InvalidInput on negative values or no cells, ZeroFunction if all vanish.
  explicit StepFunction(std::vector<Rational> values);

  std::size_t cells() const noexcept { return values_.size(); }
  const std::vector<Rational>& values() const noexcept { return values_; }
  /// True iff every nonzero value is the same.
  bool constant_on_support() const;

 private:
  std::vector<Rational> values_;
};

struct Norms {
  Rational l1;
  Rational l2_squared;
  Rational rho_squared;  // ‖f‖₂² / ‖f‖₁²
  double rho = 1.0;
};

Norms norms(const StepFunction& f);

/// Continuous piecewise-linear function on [−1, 1] with knots at j/N.
class PiecewiseLinear {
 public:
  PiecewiseLinear(std::size_t cells, std::vector<Rational> knot_values);

  std::size_t cells() const noexcept { return cells_; }
  /// Value at x = j/N for j in [−N, N].
  const Rational& knot(std::int64_t j) const;
  const std::vector<Rational>& knots() const noexcept { return knots_; }
  /// Exact value at any rational x (zero outside [−1, 1]).
  Rational at(const Rational& x) const;
  Rational integral() const;

 private:
  std::size_t cells_;
  std::vector<Rational> knots_;  // index j + N
};

/// Exact (f∘f)(x) = ∫ f(t) f(x + t) dt.
PiecewiseLinear autocorrelate(const StepFunction& f);

/// ‖f‖₁^{−2} · sup over |x| ≥ δ of (f∘f)(x); zero once δ ≥ 1. InvalidInput unless δ > 0.
Rational omega(const StepFunction& f, const Rational& delta);

/// Volume of {x ∈ [−1,1]^k : |x_i − x_j| ≤ 1}, by slicing on the smallest
/// coordinate and integrating the resulting polynomial exactly.
Rational continuous_t(int k);
/// Closed form k + 1.
Rational continuous_t_formula(int k);
/// Monte-Carlo estimate of the same volume.
double continuous_t_monte_carlo(int k, std::uint64_t samples, std::uint64_t seed);

struct FanReport {
  Rational delta;
  Rational rho_squared;
  double rho = 1.0;
  Rational omega;
  double l1 = 0.0;       // log_ρ(1/2δ)
  double l = 0.0;        // L1 − log_ρ(L1)
  double rhs = 0.0;      // 1 − 8·max{(2δ)^{1/8}, ln(L1)/L1}
  double cs_lower = 0.0; // 1 − ρ·sqrt(ρ² − 1), reported only
  Verdict verdict = Verdict::not_applicable;
  nlohmann::ordered_json instance;

  CheckReport as_report() const;
};

/// Throws HypothesisViolated when f is constant on its support or δ is
/// outside (0, min{1/(2ρ¹²), 2⁻⁸}].
FanReport theorem_fan_check(const StepFunction& f, const Rational& delta);

/// Compares ω^k with 1/(k+1) − 2δρ^{2k+2}. Without an explicit k the
/// optimizing choice ⌊L/2⌋ − 1 is used (at least 1). Requires δ in the same
/// range as theorem_fan_check but accepts functions constant on their support.
CheckReport omega_k_report(const StepFunction& f, const Rational& delta, std::optional<int> k = std::nullopt);

/// Random nonconstant step function with integer values in [0, max_value].
StepFunction random_step_function(std::size_t cells, std::uint64_t seed, std::int64_t max_value = 9);

/// Largest admissible δ for theorem_fan_check: min{1/(2ρ¹²), 2⁻⁸}.
Rational fan_delta_limit(const StepFunction& f);

}  // namespace diffrep
