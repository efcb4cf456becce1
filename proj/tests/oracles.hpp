#pragma once

// Reference implementations used as test oracles. They work on plain
// integer residues, loop over everything, and share no code with the
// library beyond the set constructors used to build their inputs.

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Big = boost::multiprecision::cpp_int;
using Vec = std::vector<std::int64_t>;

inline std::int64_t mod(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }

inline std::set<std::int64_t> residues(const Vec& a, std::int64_t n) {
  std::set<std::int64_t> s;
  for (auto x : a) s.insert(mod(x, n));
  return s;
}

/// r_A(d) = #{(x, y) in A^2 : x − y ≡ d (mod n)}.
inline std::map<std::int64_t, std::uint64_t> rep(const Vec& a, std::int64_t n) {
  std::map<std::int64_t, std::uint64_t> r;
  for (auto x : a)
    for (auto y : a) ++r[mod(x - y, n)];
  return r;
}

/// r_A over the integers (no wraparound).
inline std::map<std::int64_t, std::uint64_t> rep_z(const Vec& a) {
  std::map<std::int64_t, std::uint64_t> r;
  for (auto x : a)
    for (auto y : a) ++r[x - y];
  return r;
}

inline std::uint64_t mu(const Vec& a, std::int64_t n) {
  std::uint64_t best = 0;
  for (auto [d, c] : rep(a, n))
    if (d != 0) best = std::max(best, c);
  return best;
}

/// |A ∩ (A + x_1) ∩ ... ∩ (A + x_{k−1})| by membership tests.
inline std::uint64_t big_r(const Vec& a, const Vec& xs, std::int64_t n) {
  const auto s = residues(a, n);
  std::uint64_t c = 0;
  for (auto v : s) {
    bool ok = true;
    for (auto x : xs) ok = ok && s.count(mod(v - x, n));
    c += ok;
  }
  return c;
}

/// Every (k−1)-tuple over Z_n with its R value (zeros included).
inline void for_each_tuple(std::int64_t n, int arity, const std::function<void(const Vec&)>& fn) {
  Vec t(static_cast<std::size_t>(arity), 0);
  for (;;) {
    fn(t);
    int i = arity - 1;
    while (i >= 0 && ++t[static_cast<std::size_t>(i)] == n) t[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return;
  }
}

/// Σ over all (k−1)-tuples of R^(k)(x)^l.
inline Big energy(const Vec& a, std::int64_t n, int k, int l) {
  Big total = 0;
  for_each_tuple(n, k - 1, [&](const Vec& xs) { total += pow(Big(big_r(a, xs, n)), static_cast<unsigned>(l)); });
  return total;
}

inline std::uint64_t support(const Vec& a, std::int64_t n, int k) {
  std::uint64_t c = 0;
  for_each_tuple(n, k - 1, [&](const Vec& xs) { c += big_r(a, xs, n) > 0; });
  return c;
}

/// Naive |A|^k loop: ordered k-tuples from A with all a_i − a_j in D.
inline Big t_count(const Vec& d, const Vec& a, std::int64_t n, int k) {
  const auto ds = residues(d, n);
  const auto as = residues(a, n);
  const Vec elems(as.begin(), as.end());
  Vec idx(static_cast<std::size_t>(k), 0);
  Big count = 0;
  if (elems.empty()) return 0;
  const auto m = static_cast<std::int64_t>(elems.size());
  for (;;) {
    bool ok = true;
    for (int i = 0; i < k && ok; ++i)
      for (int j = 0; j < k && ok; ++j)
        ok = ds.count(mod(elems[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] -
                              elems[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])],
                          n)) > 0;
    count += ok;
    int i = k - 1;
    while (i >= 0 && ++idx[static_cast<std::size_t>(i)] == m) idx[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return count;
  }
}

/// Interval [−m, m] as residue list.
inline Vec centered(std::int64_t size) {
  const std::int64_t m = size / 2;
  Vec out;
  for (std::int64_t x = (size % 2 ? -m : -(m - 1)); x <= m; ++x) out.push_back(x);
  return out;
}

/// Is the set closed under negation and does it contain 0?
inline bool symmetric(const Vec& d, std::int64_t n) {
  const auto s = residues(d, n);
  if (!s.count(0)) return false;
  for (auto x : s)
    if (!s.count(mod(-x, n))) return false;
  return true;
}

/// All symmetric D ∋ 0 in Z_n from the full power set (exponential; n ≤ 16).
inline std::vector<Vec> symmetric_sets(std::int64_t n) {
  std::vector<Vec> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Vec d;
    for (std::int64_t x = 0; x < n; ++x)
      if (mask >> x & 1) d.push_back(x);
    if (symmetric(d, n)) out.push_back(d);
  }
  return out;
}

/// Set bits of a mask as a residue list.
inline Vec from_mask(std::uint64_t mask, std::int64_t n) {
  Vec out;
  for (std::int64_t x = 0; x < n; ++x)
    if (mask >> x & 1) out.push_back(x);
  return out;
}

/// Mian–Chowla by rescanning every difference for each candidate.
inline Vec greedy_sidon(std::size_t size) {
  Vec out;
  for (std::int64_t c = 0; out.size() < size; ++c) {
    Vec trial = out;
    trial.push_back(c);
    std::set<std::int64_t> diffs;
    bool ok = true;
    for (std::size_t i = 0; i < trial.size() && ok; ++i)
      for (std::size_t j = 0; j < trial.size() && ok; ++j)
        if (i != j) ok = diffs.insert(trial[i] - trial[j]).second;
    if (ok) out = trial;
  }
  return out;
}

}  // namespace oracle
