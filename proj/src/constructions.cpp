#include "diffrep/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "diffrep/error.hpp"
#include "diffrep/repfn.hpp"

namespace diffrep {

std::vector<std::int64_t> sidon_elements(std::size_t size) {
  std::vector<std::int64_t> out;
  std::vector<bool> used;  // positive differences already realized
  std::int64_t candidate = 0;
  while (out.size() < size) {
    bool ok = true;
    for (std::int64_t a : out) {
      const auto diff = static_cast<std::size_t>(candidate - a);
      if (diff < used.size() && used[diff]) {
        ok = false;
        break;
      }
    }
    if (ok) {
      for (std::int64_t a : out) {
        const auto diff = static_cast<std::size_t>(candidate - a);
        if (diff >= used.size()) used.resize(diff + 1, false);
        used[diff] = true;
      }
      out.push_back(candidate);
    }
    ++candidate;
  }
  return out;
}

GSet sidon(std::size_t size) {
  const auto elems = sidon_elements(size);
  const std::int64_t w = std::max<std::int64_t>(1, elems.empty() ? 1 : elems.back());
  return GSet::from_integers(GroupSpec::integer_window(w), elems);
}

namespace {

// Smallest positive |x| over 2Λ − 2Λ, i.e. over (a + b) − (c + d).
std::int64_t min_nonzero_double_difference(const std::vector<std::int64_t>& lambda) {
  std::vector<std::int64_t> sums;
  for (std::size_t i = 0; i < lambda.size(); ++i)
    for (std::size_t j = i; j < lambda.size(); ++j) sums.push_back(lambda[i] + lambda[j]);
  std::sort(sums.begin(), sums.end());
  sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
  std::int64_t best = 0;
  for (std::size_t i = 1; i < sums.size(); ++i) {
    const std::int64_t gap = sums[i] - sums[i - 1];
    if (best == 0 || gap < best) best = gap;
  }
  return best;
}

}  // namespace

Measure0Witness measure0_witness(const Rational& epsilon) {
  if (epsilon <= 0 || epsilon >= 1) throw Error(ErrorKind::InvalidInput, "epsilon must lie in (0, 1)");

  const Rational inv = 1 / epsilon;
  const std::int64_t n = static_cast<std::int64_t>(ceil(inv)) + 2;

  // least s with s > sqrt(2/ε) + 1, i.e. (s − 1)² > 2/ε
  const Rational two_over = 2 * inv;
  std::int64_t s = 2;
  while (Rational((s - 1) * (s - 1)) <= two_over) ++s;

  std::vector<std::int64_t> base = sidon_elements(static_cast<std::size_t>(s));
  const std::int64_t gap = min_nonzero_double_difference(base);
  const std::int64_t multiplier = (4 * n - 4) / gap + 1;

  std::vector<std::int64_t> scaled(base.size());
  std::transform(base.begin(), base.end(), scaled.begin(), [&](std::int64_t x) { return x * multiplier; });

  std::vector<std::int64_t> members;
  members.reserve(scaled.size() * static_cast<std::size_t>(n));
  for (std::int64_t l : scaled)
    for (std::int64_t p = 1; p <= n; ++p) members.push_back(p + l);
  const std::int64_t w = *std::max_element(members.begin(), members.end());
  const GroupSpec window = GroupSpec::integer_window(w);

  GSet a = GSet::from_integers(window, members);
  GSet lambda = GSet::from_integers(window, scaled);
  const GSet diffs = diff_set(a);
  const RepTable table = rep_table(a, RepMethod::direct);

  // r(d) ≥ (1 − ε)·2|A|²/|A − A|, compared without division
  const Rational size_a(static_cast<std::int64_t>(a.size()));
  const Rational rhs = (1 - epsilon) * 2 * size_a * size_a;
  const Rational diff_size(static_cast<std::int64_t>(diffs.size()));
  std::uint64_t threshold = 0;
  table.for_each_nonzero([&](Element, std::uint64_t r) {
    if (Rational(static_cast<std::int64_t>(r)) * diff_size >= rhs) ++threshold;
  });

  return Measure0Witness{epsilon,
                         n,
                         std::move(base),
                         multiplier,
                         std::move(lambda),
                         std::move(a),
                         diffs.size(),
                         threshold,
                         Rational(2 * epsilon * diff_size)};
}

std::vector<std::string> measure0_invariant_failures(const Measure0Witness& w) {
  std::vector<std::string> failures;
  const std::int64_t s = static_cast<std::int64_t>(w.lambda.size());
  if (Rational(w.n) < 1 / w.epsilon + 2) failures.push_back("n < 1/epsilon + 2");
  if (Rational((s - 1) * (s - 1)) <= 2 / w.epsilon) failures.push_back("|Lambda| <= sqrt(2/epsilon) + 1");

  // (2P − 2P) ∩ (2Λ − 2Λ) = {0}: nonzero elements of 2Λ − 2Λ must exceed 2n − 2
  const auto lam = w.lambda.elements();
  for (Element a : lam)
    for (Element b : lam)
      for (Element c : lam)
        for (Element d : lam) {
          const std::int64_t x = a.code + b.code - c.code - d.code;
          if (x != 0 && std::abs(x) <= 2 * w.n - 2) {
            failures.push_back("2P-2P meets 2Lambda-2Lambda at " + std::to_string(x));
            goto separated;
          }
        }
separated:
  if (w.a.size() != static_cast<std::size_t>(s * w.n)) failures.push_back("|A| != |Lambda| n");
  const std::uint64_t expected = static_cast<std::uint64_t>((2 * w.n - 1) * (s * s - s + 1));
  if (w.diff_size != expected)
    failures.push_back("|A-A| = " + std::to_string(w.diff_size) + ", expected " + std::to_string(expected));
  if (Rational(static_cast<std::int64_t>(w.threshold_count)) > w.bound)
    failures.push_back("threshold count exceeds 2 epsilon |A-A|");
  return failures;
}

GSet random_set(const GroupSpec& group, std::size_t size, std::uint64_t seed) {
  const std::size_t n = group.carrier_size();
  if (size > n)
    throw Error(ErrorKind::SizeOutOfRange, "cannot draw " + std::to_string(size) + " of " + std::to_string(n));
  std::mt19937_64 engine(seed);
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  Bitset bits(n);
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(uniform_below(engine, n - i));
    std::swap(pool[i], pool[j]);
    bits.set(pool[i]);
  }
  return GSet::from_bits(group, std::move(bits));
}

GSet interval_set(const GroupSpec& group, std::int64_t a, std::int64_t b) {
  if (group.kind() == GroupSpec::Kind::product)
    throw Error(ErrorKind::InvalidInput, "intervals are defined for cyclic groups and windows only");
  if (b < a) return GSet(group);
  if (group.is_cyclic() && b - a + 1 > group.order())
    throw Error(ErrorKind::SizeOutOfRange, "interval longer than the group");
  std::vector<std::int64_t> values;
  values.reserve(static_cast<std::size_t>(b - a + 1));
  for (std::int64_t x = a; x <= b; ++x) values.push_back(x);
  return GSet::from_integers(group, values);
}

}  // namespace diffrep
