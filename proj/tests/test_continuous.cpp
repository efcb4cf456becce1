#include <catch_amalgamated.hpp>

#include <cmath>

#include "diffrep/continuous.hpp"
#include "diffrep/error.hpp"

using namespace diffrep;

namespace {

StepFunction step(std::vector<std::int64_t> v) {
  std::vector<Rational> r;
  for (auto x : v) r.emplace_back(x);
  return StepFunction(std::move(r));
}

auto kind_is(ErrorKind k) {
  return Catch::Matchers::Predicate<Error>([k](const Error& e) { return e.kind() == k; });
}

Rational q(std::int64_t p, std::int64_t d) { return Rational(p, d); }

}  // namespace

TEST_CASE("step function validation", "[continuous]") {
  CHECK_THROWS_MATCHES(step({}), Error, kind_is(ErrorKind::InvalidInput));
  CHECK_THROWS_MATCHES(step({1, -1}), Error, kind_is(ErrorKind::InvalidInput));
  CHECK_THROWS_MATCHES(step({0, 0, 0}), Error, kind_is(ErrorKind::ZeroFunction));
  CHECK(step({2, 0}).constant_on_support());
  CHECK(step({3, 3, 0, 3}).constant_on_support());
  CHECK_FALSE(step({1, 2}).constant_on_support());
}

TEST_CASE("norms", "[continuous]") {
  const auto one = norms(step({1}));
  CHECK(one.l1 == 1);
  CHECK(one.l2_squared == 1);
  CHECK(one.rho == 1.0);

  const auto half = norms(step({2, 0}));
  CHECK(half.l1 == 1);
  CHECK(half.l2_squared == 2);
  CHECK(half.rho == Catch::Approx(std::sqrt(2.0)));

  const auto mixed = norms(step({1, 3}));
  CHECK(mixed.l1 == 2);
  CHECK(mixed.l2_squared == 5);
  CHECK(mixed.rho_squared == q(5, 4));

  for (std::uint64_t seed = 0; seed < 50; ++seed) CHECK(norms(random_step_function(8, seed)).rho_squared >= 1);
}

TEST_CASE("autocorrelation", "[continuous]") {
  const auto tri = autocorrelate(step({1}));
  CHECK(tri.at(q(1, 2)) == q(1, 2));
  CHECK(tri.at(q(-1, 3)) == q(2, 3));
  CHECK(tri.at(0) == 1);
  CHECK(tri.at(2) == 0);

  const auto g = autocorrelate(step({2, 0}));
  CHECK(g.at(q(2, 5)) == q(2, 5));
  CHECK(g.at(q(-1, 4)) == 1);
  CHECK(g.at(q(3, 4)) == 0);

  // refined cells do not change the function
  const auto fine = autocorrelate(step({2, 2, 2, 0, 0, 0}));
  for (int i = -12; i <= 12; ++i) CHECK(fine.at(q(i, 12)) == g.at(q(i, 12)));

  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto f = random_step_function(2 + seed % 13, seed);
    const auto ac = autocorrelate(f);
    const auto n = static_cast<std::int64_t>(f.cells());
    CHECK(ac.knot(0) == norms(f).l2_squared);
    CHECK(ac.integral() == norms(f).l1 * norms(f).l1);
    CHECK(ac.knot(n) == 0);
    CHECK(ac.knot(-n) == 0);
    for (std::int64_t j = 0; j <= n; ++j) CHECK(ac.knot(j) == ac.knot(-j));
    // knot formula: (1/N) Σ v_i v_{i+j}
    for (std::int64_t j = 0; j < n; ++j) {
      Rational s = 0;
      for (std::int64_t i = 0; i + j < n; ++i) s += f.values()[static_cast<std::size_t>(i)] * f.values()[static_cast<std::size_t>(i + j)];
      CHECK(ac.knot(j) == s / n);
    }
  }
}

TEST_CASE("omega", "[continuous]") {
  CHECK(omega(step({1}), q(1, 10)) == q(9, 10));
  CHECK(omega(step({2, 0}), q(1, 10)) == q(8, 5));
  CHECK(omega(step({1}), 1) == 0);
  CHECK(omega(step({1}), 3) == 0);
  CHECK(omega(step({2, 0}), q(1, 2)) == 0);
  CHECK_THROWS_MATCHES(omega(step({1}), 0), Error, kind_is(ErrorKind::InvalidInput));

  // brute-force sup over a fine rational grid never exceeds the exact value
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const auto f = random_step_function(5, seed);
    const auto ac = autocorrelate(f);
    const Rational delta = q(1 + static_cast<std::int64_t>(seed % 7), 17);
    const Rational w = omega(f, delta);
    Rational best = 0;
    for (int i = 0; i <= 340; ++i) {
      const Rational x = q(i, 340);
      if (x >= delta) best = std::max(best, ac.at(x));
    }
    best = std::max(best, ac.at(delta));
    const Rational l1 = norms(f).l1;
    CHECK(best / (l1 * l1) == w);
  }
}

TEST_CASE("continuous T count", "[continuous]") {
  CHECK(continuous_t(1) == 2);
  CHECK(continuous_t(2) == 3);
  for (int k = 1; k <= 8; ++k) {
    CHECK(continuous_t(k) == k + 1);
    CHECK(continuous_t_formula(k) == k + 1);
  }
  CHECK(continuous_t_monte_carlo(3, 1000000, 1) == Catch::Approx(4.0).margin(0.05));
  CHECK(continuous_t_monte_carlo(3, 1000, 5) == continuous_t_monte_carlo(3, 1000, 5));
}

TEST_CASE("fan theorem checker", "[continuous]") {
  const auto f = step({3, 1, 2, 0});
  const Rational limit = fan_delta_limit(f);
  CHECK(limit <= q(1, 256));
  const auto at_cap = theorem_fan_check(f, q(1, 256) < limit ? q(1, 256) : limit);
  CHECK(at_cap.rhs < 0);
  CHECK(at_cap.verdict == Verdict::vacuous);

  const auto mild = step({1, 2});
  const auto r = theorem_fan_check(mild, q(1, 256));
  CHECK(r.rhs <= 1 - 8 * std::pow(2.0, -7.0 / 8.0));
  CHECK(r.verdict == Verdict::vacuous);
  CHECK(r.omega == omega(mild, q(1, 256)));
  CHECK(r.rho_squared == q(10, 9));

  CHECK_THROWS_MATCHES(theorem_fan_check(step({2, 0}), q(1, 1000000)), Error, kind_is(ErrorKind::HypothesisViolated));
  CHECK_THROWS_MATCHES(theorem_fan_check(mild, q(1, 128)), Error, kind_is(ErrorKind::HypothesisViolated));
  CHECK_THROWS_AS(theorem_fan_check(mild, 0), Error);
}

TEST_CASE("omega_k report", "[continuous]") {
  const auto f = step({2, 0});
  const auto r = omega_k_report(f, q(1, 1000000), 2);
  CHECK(r.verdict == Verdict::holds);
  const Rational w = omega(f, q(1, 1000000));
  CHECK(r.lhs.exact == w * w);
  CHECK(r.rhs.exact == q(1, 3) - 2 * q(1, 1000000) * 8);
  CHECK_THROWS_AS(omega_k_report(f, q(1, 64), 2), Error);

  const auto auto_k = omega_k_report(step({5, 1, 1, 1}), q(1, 1000000000));
  CHECK(auto_k.verdict != Verdict::violated);
  CHECK_FALSE(auto_k.detail("k").empty());

  CHECK_THROWS_AS(omega_k_report(step({1}), q(1, 1000)), Error);
}

TEST_CASE("random fan instances never violate", "[continuous]") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto f = random_step_function(2 + seed % 20, seed);
    const Rational lim = fan_delta_limit(f);
    for (const Rational& d : {lim, Rational(lim / 1024)}) {
      CHECK(theorem_fan_check(f, d).verdict != Verdict::violated);
      CHECK(omega_k_report(f, d).verdict != Verdict::violated);
    }
  }
}
