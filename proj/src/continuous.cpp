#include "diffrep/continuous.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "diffrep/constructions.hpp"
#include "diffrep/error.hpp"
#include "diffrep/io.hpp"

namespace diffrep {

StepFunction::StepFunction(std::vector<Rational> values) : values_(std::move(values)) {
  if (values_.empty()) throw Error(ErrorKind::InvalidInput, "step function needs at least one cell");
  bool nonzero = false;
  for (const auto& v : values_) {
    if (v < 0) throw Error(ErrorKind::InvalidInput, "step function values must be nonnegative");
    if (v != 0) nonzero = true;
  }
  if (!nonzero) throw Error(ErrorKind::ZeroFunction, "step function vanishes identically");
}

bool StepFunction::constant_on_support() const {
  const Rational* seen = nullptr;
  for (const auto& v : values_) {
    if (v == 0) continue;
    if (seen && *seen != v) return false;
    seen = &v;
  }
  return true;
}

Norms norms(const StepFunction& f) {
  const Rational n(static_cast<std::int64_t>(f.cells()));
  Rational s1 = 0, s2 = 0;
  for (const auto& v : f.values()) {
    s1 += v;
    s2 += v * v;
  }
  Norms out;
  out.l1 = s1 / n;
  out.l2_squared = s2 / n;
  out.rho_squared = out.l2_squared / (out.l1 * out.l1);
  out.rho = std::sqrt(to_double(out.rho_squared));
  return out;
}

PiecewiseLinear::PiecewiseLinear(std::size_t cells, std::vector<Rational> knot_values)
    : cells_(cells), knots_(std::move(knot_values)) {
  if (cells_ == 0 || knots_.size() != 2 * cells_ + 1)
    throw Error(ErrorKind::InvalidInput, "piecewise-linear function needs 2N+1 knot values");
}

const Rational& PiecewiseLinear::knot(std::int64_t j) const {
  const auto n = static_cast<std::int64_t>(cells_);
  if (j < -n || j > n) throw Error(ErrorKind::InvalidInput, "knot index out of range");
  return knots_[static_cast<std::size_t>(j + n)];
}

Rational PiecewiseLinear::at(const Rational& x) const {
  if (x <= -1 || x >= 1) return Rational(0);
  const auto n = static_cast<std::int64_t>(cells_);
  const Rational scaled = x * n;
  const auto j = static_cast<std::int64_t>(floor(scaled));
  const Rational frac = scaled - j;
  if (frac == 0) return knot(j);
  return knot(j) + (knot(j + 1) - knot(j)) * frac;
}

Rational PiecewiseLinear::integral() const {
  Rational sum = 0;
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i) sum += knots_[i] + knots_[i + 1];
  return sum / (2 * static_cast<std::int64_t>(cells_));
}

PiecewiseLinear autocorrelate(const StepFunction& f) {
  // Two boxes of width 1/N overlap in a tent, so the correlation is linear
  // between multiples of 1/N and fixed by its values there.
  const auto& v = f.values();
  const auto n = static_cast<std::int64_t>(v.size());
  std::vector<Rational> knots(static_cast<std::size_t>(2 * n + 1));
  for (std::int64_t j = 0; j <= n; ++j) {
    Rational sum = 0;
    for (std::int64_t i = 0; i + j < n; ++i) sum += v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i + j)];
    sum /= n;
    knots[static_cast<std::size_t>(n + j)] = sum;
    knots[static_cast<std::size_t>(n - j)] = sum;
  }
  return PiecewiseLinear(static_cast<std::size_t>(n), std::move(knots));
}

namespace {

Rational omega_of(const PiecewiseLinear& g, const Norms& nm, const Rational& delta) {
  if (delta <= 0) throw Error(ErrorKind::InvalidInput, "delta must be positive");
  if (delta >= 1) return Rational(0);
  const auto n = static_cast<std::int64_t>(g.cells());
  // sup over [δ, 1] is attained at δ or at a knot to its right
  Rational best = g.at(delta);
  for (auto j = static_cast<std::int64_t>(ceil(delta * n)); j <= n; ++j) best = std::max(best, g.knot(j));
  return best / (nm.l1 * nm.l1);
}

}  // namespace

Rational omega(const StepFunction& f, const Rational& delta) {
  return omega_of(autocorrelate(f), norms(f), delta);
}

Rational continuous_t(int k) {
  if (k < 1) throw Error(ErrorKind::InvalidInput, "k must be at least 1");
  // With the smallest coordinate at m, the remaining k − 1 coordinates range
  // over [m, min(m + 1, 1)] and any of the k coordinates may be the smallest:
  //   volume = ∫_{−1}^{0} k dm + ∫_0^1 k (1 − m)^{k−1} dm.
  const auto ku = static_cast<unsigned>(k);
  Rational left(k);
  Rational right = 0;
  for (unsigned j = 0; j < ku; ++j) {
    // ∫_0^1 m^j dm = 1/(j+1), expanding (1 − m)^{k−1}
    Rational term(binomial(ku - 1, j), j + 1);
    right += (j % 2 ? Rational(-term) : term);
  }
  return left + k * right;
}

Rational continuous_t_formula(int k) {
  if (k < 1) throw Error(ErrorKind::InvalidInput, "k must be at least 1");
  return Rational(k + 1);
}

double continuous_t_monte_carlo(int k, std::uint64_t samples, std::uint64_t seed) {
  if (k < 1 || samples == 0) throw Error(ErrorKind::InvalidInput, "need k >= 1 and samples > 0");
  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    double lo = 2.0, hi = -2.0;
    for (int i = 0; i < k; ++i) {
      const double x = u(engine);
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    if (hi - lo <= 1.0) ++hits;
  }
  return std::ldexp(static_cast<double>(hits) / static_cast<double>(samples), k);
}

Rational fan_delta_limit(const StepFunction& f) {
  const Norms nm = norms(f);
  const Rational a = 1 / (2 * ipow(nm.rho_squared, 6));
  const Rational b(1, 256);
  return std::min(a, b);
}

namespace {

struct FanSetup {
  Norms nm;
  PiecewiseLinear g;
  Rational omega;
  double l1;
};

FanSetup fan_setup(const StepFunction& f, const Rational& delta, bool require_nonconstant) {
  if (require_nonconstant && f.constant_on_support())
    throw Error(ErrorKind::HypothesisViolated, "f is constant on its support (rho = 1)");
  if (delta <= 0 || delta > fan_delta_limit(f))
    throw Error(ErrorKind::HypothesisViolated,
                "delta = " + to_string(delta) + " outside (0, " + to_string(fan_delta_limit(f)) + "]");
  Norms nm = norms(f);
  PiecewiseLinear g = autocorrelate(f);
  Rational w = omega_of(g, nm, delta);
  const double log_rho = 0.5 * std::log(to_double(nm.rho_squared));
  const double l1 = -std::log(2.0 * to_double(delta)) / log_rho;
  return FanSetup{std::move(nm), std::move(g), std::move(w), l1};
}

Json fan_instance(const std::string& check, const StepFunction& f, const Rational& delta) {
  Json j;
  j["check"] = check;
  j["function"] = to_json(f);
  j["delta"] = to_string(delta);
  return j;
}

}  // namespace

FanReport theorem_fan_check(const StepFunction& f, const Rational& delta) {
  const FanSetup s = fan_setup(f, delta, true);
  FanReport r;
  r.delta = delta;
  r.rho_squared = s.nm.rho_squared;
  r.rho = s.nm.rho;
  r.omega = s.omega;
  r.l1 = s.l1;
  r.l = s.l1 - std::log(s.l1) / std::log(s.nm.rho);
  const double eighth = std::pow(2.0 * to_double(delta), 0.125);
  r.rhs = 1.0 - 8.0 * std::max(eighth, std::log(s.l1) / s.l1);
  r.cs_lower = 1.0 - s.nm.rho * std::sqrt(std::max(0.0, to_double(s.nm.rho_squared) - 1.0));
  r.verdict = r.rhs <= 0.0 ? Verdict::vacuous : compare_guarded(to_double(r.omega), r.rhs);
  r.instance = fan_instance("fan", f, delta);
  return r;
}

CheckReport FanReport::as_report() const {
  CheckReport rep;
  rep.name = "fan";
  rep.hypotheses_met = true;
  rep.lhs = Quantity::of(omega);
  rep.rhs = Quantity::approximate(rhs);
  rep.verdict = verdict;
  rep.note("rho_squared", rho_squared);
  rep.note("rho", Quantity::approximate(rho).str());
  rep.note("delta", delta);
  rep.note("L1", Quantity::approximate(l1).str());
  rep.note("L", Quantity::approximate(l).str());
  rep.note("cs_lower", Quantity::approximate(cs_lower).str());
  rep.note("omega_at_least_cs_lower", to_double(omega) >= cs_lower ? "yes" : "no");
  rep.instance = instance;
  return rep;
}

CheckReport omega_k_report(const StepFunction& f, const Rational& delta, std::optional<int> k) {
  // the ω^k inequality does not use non-constancy, only the range of δ
  const FanSetup s = fan_setup(f, delta, false);
  if (!k && s.nm.rho_squared == 1)
    throw Error(ErrorKind::InvalidInput, "rho = 1 leaves L undefined; pass k explicitly");
  const double l = k ? 0.0 : s.l1 - std::log(s.l1) / std::log(s.nm.rho);
  const int chosen = k ? *k : std::max(1, static_cast<int>(std::floor(l / 2.0)) - 1);
  if (chosen < 1) throw Error(ErrorKind::InvalidInput, "k must be at least 1");
  const auto ku = static_cast<unsigned>(chosen);

  CheckReport rep;
  rep.name = "omega_k";
  rep.hypotheses_met = true;
  rep.lhs = Quantity::of(ipow(s.omega, ku));
  const Rational rhs = Rational(1, chosen + 1) - 2 * delta * ipow(s.nm.rho_squared, ku + 1);
  rep.rhs = Quantity::of(rhs);
  if (rhs <= 0)
    rep.verdict = Verdict::vacuous;
  else
    rep.verdict = rep.lhs.exact >= rhs ? Verdict::holds : Verdict::violated;
  rep.note("k", std::to_string(chosen));
  rep.note("omega", s.omega);
  rep.note("delta", delta);
  rep.note("half_reciprocal", Rational(1, 2 * (chosen + 1)));
  rep.note("omega_k_at_least_half_reciprocal", rep.lhs.exact * 2 * (chosen + 1) >= 1 ? "yes" : "no");
  rep.instance = fan_instance("omega_k", f, delta);
  rep.instance["k"] = chosen;
  return rep;
}

StepFunction random_step_function(std::size_t cells, std::uint64_t seed, std::int64_t max_value) {
  if (cells < 2 || max_value < 2)
    throw Error(ErrorKind::InvalidInput, "a nonconstant step function needs two cells and two nonzero levels");
  std::mt19937_64 engine(seed);
  for (;;) {
    std::vector<Rational> values(cells);
    for (auto& v : values) v = static_cast<std::int64_t>(uniform_below(engine, static_cast<std::uint64_t>(max_value) + 1));
    bool nonzero = std::any_of(values.begin(), values.end(), [](const Rational& v) { return v != 0; });
    if (!nonzero) continue;
    StepFunction f(std::move(values));
    if (!f.constant_on_support()) return f;
  }
}

}  // namespace diffrep
