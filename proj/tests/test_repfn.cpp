#include <catch_amalgamated.hpp>

#include <random>

#include "diffrep/constructions.hpp"
#include "diffrep/energy.hpp"
#include "diffrep/error.hpp"
#include "diffrep/repfn.hpp"
#include "oracles.hpp"

using namespace diffrep;

namespace {

bool has_kind(const Error& e, ErrorKind k) { return e.kind() == k; }

GSet cyc(std::int64_t n, std::vector<std::int64_t> v) { return GSet::from_integers(GroupSpec::cyclic(n), v); }
GSet win(std::int64_t w, std::vector<std::int64_t> v) { return GSet::from_integers(GroupSpec::integer_window(w), v); }

std::vector<std::int64_t> signed_codes(const GSet& s) {
  std::vector<std::int64_t> out;
  for (Element e : s.elements()) out.push_back(s.group().signed_value(e));
  std::sort(out.begin(), out.end());
  return out;
}

oracle::Vec residue_list(const GSet& s) {
  oracle::Vec out;
  for (Element e : s.elements()) out.push_back(e.code);
  return out;
}

}  // namespace

TEST_CASE("difference sets", "[repfn]") {
  const GSet a = win(6, {0, 1, 3});
  const GSet d = diff_set(a);
  CHECK(signed_codes(d) == std::vector<std::int64_t>{-3, -2, -1, 0, 1, 2, 3});
  CHECK(signed_codes(diff_set(cyc(5, {0, 1}))) == std::vector<std::int64_t>{-1, 0, 1});

  for (std::int64_t n = 1; n <= 20; ++n)
    CHECK(diff_set(interval_set(GroupSpec::integer_window(2 * n + 2), 1, n)).size() == static_cast<std::size_t>(2 * n - 1));

  CHECK_THROWS_MATCHES(diff_set(GSet(GroupSpec::cyclic(5))), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return has_kind(e, ErrorKind::EmptySet); }));
  CHECK_THROWS_MATCHES(diff_set(win(3, {-3, 3})), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return has_kind(e, ErrorKind::WindowOverflow); }));
}

TEST_CASE("rep table examples", "[repfn]") {
  const GSet a = win(6, {0, 1, 3});
  const RepTable r = rep_table(a);
  const auto& g = a.group();
  CHECK(r.count(g.from_integer(0)) == 3);
  CHECK(r.count(g.from_integer(1)) == 1);
  CHECK(r.count(g.from_integer(2)) == 1);
  CHECK(r.count(g.from_integer(3)) == 1);
  CHECK(r.count(g.from_integer(4)) == 0);
  CHECK(r.total() == 9);

  const RepTable r2 = rep_table(win(4, {0, 1, 2}));
  CHECK(r2.count(Element{1}) == 2);
  CHECK(r2.count(Element{2}) == 1);
  CHECK_THROWS_AS(rep_table(GSet(GroupSpec::cyclic(3))), Error);
}

TEST_CASE("rep table agrees with the oracle and its invariants", "[repfn]") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 60);
    const std::size_t size = 1 + rng() % static_cast<std::uint64_t>(n);
    const GSet a = random_set(GroupSpec::cyclic(n), size, rng());
    const RepTable r = rep_table(a, RepMethod::direct);
    const auto want = oracle::rep(residue_list(a), n);
    for (std::int64_t d = 0; d < n; ++d) {
      const auto it = want.find(d);
      CHECK(r.count(Element{d}) == (it == want.end() ? 0 : it->second));
      CHECK(r.count(Element{d}) == r.count(Element{oracle::mod(-d, n)}));
      CHECK(r.count(Element{d}) <= a.size());
    }
    CHECK(r.count(Element{0}) == a.size());
    CHECK(r.total() == BigInt(a.size() * a.size()));
  }
}

TEST_CASE("FFT and direct rep tables agree exactly", "[repfn][fft]") {
  std::mt19937_64 rng(5);
  for (std::int64_t n : {16, 97, 512, 1000, 4096, 1 << 16}) {
    for (std::size_t size : {std::size_t{1}, std::size_t{7}, static_cast<std::size_t>(n / 3), static_cast<std::size_t>(n)}) {
      if (size == 0) continue;
      if (n == (1 << 16) && size > 5000) continue;  // keep the direct side quick
      const GSet a = random_set(GroupSpec::cyclic(n), size, rng());
      CHECK(rep_table(a, RepMethod::fft) == rep_table(a, RepMethod::direct));
    }
  }
  const GSet prod = random_set(GroupSpec::product({8, 8, 9}), 200, 3);
  CHECK(rep_table(prod, RepMethod::fft) == rep_table(prod, RepMethod::direct));
}

TEST_CASE("mu examples", "[repfn]") {
  CHECK(mu(win(4, {0, 1, 2})) == 2);
  CHECK(mu(win(6, {0, 1, 3})) == 1);
  for (std::int64_t n = 2; n <= 30; ++n) CHECK(mu(interval_set(GroupSpec::cyclic(4 * n + 1), 1, n)) == static_cast<std::uint64_t>(n - 1));
  CHECK_THROWS_MATCHES(mu(win(3, {1})), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return has_kind(e, ErrorKind::Degenerate); }));

  const auto m = mu_with_witness(win(4, {0, 1, 2}));
  CHECK(std::abs(m.witness.code) == 1);
}

TEST_CASE("mu matches the oracle", "[repfn]") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::int64_t n = 3 + static_cast<std::int64_t>(rng() % 40);
    const std::size_t size = 2 + rng() % static_cast<std::uint64_t>(n - 1);
    const GSet a = random_set(GroupSpec::cyclic(n), size, rng());
    const auto m = mu_with_witness(a);
    CHECK(m.value == oracle::mu(residue_list(a), n));
    CHECK(m.witness.code != 0);
    CHECK(rep_table(a).count(m.witness) == m.value);
  }
}

TEST_CASE("higher rep examples", "[repfn]") {
  const GSet a = win(8, {0, 1, 2});
  const auto t = higher_rep(a, 3);
  const std::vector<Element> x{Element{1}, Element{2}};
  CHECK(t.at(x) == 1);

  const GSet b = win(8, {0, 1});
  const std::vector<Element> y{Element{1}, Element{-1}};
  CHECK(higher_rep(b, 3).at(y) == 0);
  CHECK(support_size_higher(b, 3) == 7);
  CHECK(support_size_higher(win(2, {1}), 2) == 1);
  CHECK(support_size_higher(cyc(7, {0, 1, 2}), 3) == 19);

  const GSet c = random_set(GroupSpec::cyclic(23), 9, 4);
  const RepTable r = rep_table(c);
  const auto h = higher_rep(c, 2);
  for (std::int64_t d = 0; d < 23; ++d) {
    const std::vector<Element> one{Element{d}};
    CHECK(h.at(one) == r.count(Element{d}));
  }
}

TEST_CASE("higher rep matches the tuple oracle", "[repfn]") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const std::int64_t n = 3 + static_cast<std::int64_t>(rng() % 10);
    const std::size_t size = 1 + rng() % static_cast<std::uint64_t>(n);
    const int k = 2 + static_cast<int>(rng() % 3);
    const GSet a = random_set(GroupSpec::cyclic(n), size, rng());
    const auto av = residue_list(a);
    const auto h = higher_rep(a, k);
    CHECK(h.total_mass() == ipow(BigInt(size), static_cast<unsigned>(k)));
    CHECK(h.support_size() == oracle::support(av, n, k));
    CHECK(support_size_higher(a, k) == h.support_size());

    const GSet d = diff_set(a);
    for (const auto& entry : h.entries()) {
      oracle::Vec xs;
      for (Element e : entry.tuple) {
        xs.push_back(e.code);
        CHECK(d.contains(e));
      }
      CHECK(entry.value == oracle::big_r(av, xs, n));
    }
    const auto prof = higher_rep_profile(a, k);
    CHECK(prof.support_size() == h.support_size());
    CHECK(prof.mass() == h.total_mass());
    CHECK(prof.moment(2) == oracle::energy(av, n, k, 2));
  }
}

TEST_CASE("mu_k", "[repfn]") {
  const auto r = mu_k(win(8, {0, 1, 2}), 3);
  CHECK(r.found);
  CHECK(r.value == 1);
  REQUIRE(r.witness.size() == 2);
  CHECK(r.witness[0] != r.witness[1]);

  const auto five = mu_k(interval_set(GroupSpec::cyclic(101), 1, 5), 3);
  CHECK(five.value == 3);
  const std::vector<Element> x{Element{1}, Element{2}};
  CHECK(higher_rep(interval_set(GroupSpec::cyclic(101), 1, 5), 3).at(x) == 3);

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const GSet a = random_set(GroupSpec::cyclic(19), 2 + rng() % 10, rng());
    const auto m2 = mu_k(a, 2);
    CHECK(m2.found);
    CHECK(m2.value == mu(a));
  }

  CHECK_THROWS_MATCHES(mu_k(win(3, {0, 1}), 3), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return has_kind(e, ErrorKind::Degenerate); }));
}

TEST_CASE("search caps are enforced", "[repfn]") {
  Limits tight;
  tight.tuple_cap = 50;
  const GSet a = random_set(GroupSpec::cyclic(31), 15, 1);
  CHECK_THROWS_MATCHES(higher_rep(a, 4, tight), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return has_kind(e, ErrorKind::CapExceeded); }));
}

TEST_CASE("Cauchy-Davenport lower bound in prime cyclic groups", "[repfn]") {
  std::mt19937_64 rng(41);
  for (std::int64_t p : {5, 7, 11, 13, 31, 101}) {
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t size = 1 + rng() % static_cast<std::uint64_t>((p + 1) / 2);
      const GSet a = random_set(GroupSpec::cyclic(p), size, rng());
      CHECK(diff_set(a).size() >= 2 * size - 1);
    }
  }
}

TEST_CASE("support of R^(k) is bounded by the clique count of A - A", "[repfn]") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 60; ++trial) {
    const std::int64_t n = 5 + static_cast<std::int64_t>(rng() % 20);
    const GSet a = random_set(GroupSpec::cyclic(n), 2 + rng() % 5, rng());
    const GSet d = diff_set(a);
    for (int k = 2; k <= 4; ++k)
      CHECK(BigInt(support_size_higher(a, k)) <= t_count(d, d, k - 1).value);
  }
}
