#include "diffrep/energy.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <functional>
#include <mutex>
#include <thread>

#include "diffrep/error.hpp"
#include "diffrep/io.hpp"
#include "diffrep/repfn.hpp"

namespace diffrep {

namespace {

using Word = Bitset::Word;
using Acc = unsigned __int128;

BigInt to_big(Acc v) {
  BigInt hi = static_cast<std::uint64_t>(v >> 64);
  return (hi << 64) + static_cast<std::uint64_t>(v);
}

// Forward adjacency of the graph on A where u ~ v iff a_v − a_u ∈ D ∩ (−D).
// Row u holds only neighbours v > u.
class CliqueGraph {
 public:
  CliqueGraph(const GSet& d, const GSet& a) : vertices_(a.elements()) {
    require_same_group(d, a);
    const GSet sym = d.intersect(d.negate());
    m_ = vertices_.size();
    words_ = Bitset::word_count(m_);
    fwd_.assign(m_ * words_, 0);
    for (std::size_t u = 0; u < m_; ++u) {
      Word* row = fwd_.data() + u * words_;
      for (std::size_t v = u + 1; v < m_; ++v) {
        if (contains_difference(sym, vertices_[v], vertices_[u])) row[v / 64] |= Word{1} << (v % 64);
      }
    }
  }

  std::size_t size() const noexcept { return m_; }
  std::size_t words() const noexcept { return words_; }
  const Word* row(std::size_t u) const noexcept { return fwd_.data() + u * words_; }

 private:
  std::vector<Element> vertices_;
  std::size_t m_ = 0;
  std::size_t words_ = 0;
  std::vector<Word> fwd_;
};

// Counts cliques of every size up to j_max by forward-neighbourhood
// refinement; the last level is batched as an edge count inside the
// candidate set.
class CliqueCounter {
 public:
  CliqueCounter(const CliqueGraph& graph, int j_max)
      : graph_(graph), j_max_(j_max), counts_(static_cast<std::size_t>(j_max) + 1, 0),
        scratch_(static_cast<std::size_t>(std::max(j_max, 1)) * graph.words(), 0) {}

  const std::vector<Acc>& counts() const noexcept { return counts_; }

  // Subtree below the one-vertex clique {root}.
  void run_root(std::size_t root) {
    counts_[1] += 1;
    if (j_max_ < 2) return;
    const std::size_t words = graph_.words();
    const Word* f = graph_.row(root);
    std::size_t lo = words, hi = 0;
    for (std::size_t w = root / 64; w < words; ++w)
      if (f[w]) {
        lo = std::min(lo, w);
        hi = w + 1;
      }
    if (lo < hi) descend(f, lo, hi, 1);
  }

 private:
  // X is a candidate set (common forward neighbours of a d-clique), nonempty
  // within words [lo, hi).
  void descend(const Word* x, std::size_t lo, std::size_t hi, int d) {
    std::uint64_t size = 0;
    for (std::size_t w = lo; w < hi; ++w) size += static_cast<std::uint64_t>(std::popcount(x[w]));
    counts_[static_cast<std::size_t>(d) + 1] += size;
    if (d + 2 > j_max_) return;

    if (d + 3 > j_max_) {
      std::uint64_t edges = 0;
      for_each_bit(x, lo, hi, [&](std::size_t v) {
        const Word* f = graph_.row(v);
        for (std::size_t w = v / 64; w < hi; ++w) edges += static_cast<std::uint64_t>(std::popcount(x[w] & f[w]));
      });
      counts_[static_cast<std::size_t>(d) + 2] += edges;
      return;
    }

    Word* y = scratch_.data() + static_cast<std::size_t>(d) * graph_.words();
    for_each_bit(x, lo, hi, [&](std::size_t v) {
      const Word* f = graph_.row(v);
      std::size_t nlo = hi, nhi = 0;
      for (std::size_t w = v / 64; w < hi; ++w) {
        y[w] = x[w] & f[w];
        if (y[w]) {
          nlo = std::min(nlo, w);
          nhi = w + 1;
        }
      }
      if (nlo < nhi) descend(y, nlo, nhi, d + 1);
    });
  }

  template <typename Fn>
  static void for_each_bit(const Word* x, std::size_t lo, std::size_t hi, Fn&& fn) {
    for (std::size_t w = lo; w < hi; ++w) {
      Word bits = x[w];
      while (bits) {
        fn(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  const CliqueGraph& graph_;
  int j_max_;
  std::vector<Acc> counts_;
  std::vector<Word> scratch_;
};

std::vector<Acc> count_cliques(const CliqueGraph& graph, int j_max, unsigned jobs) {
  const std::size_t m = graph.size();
  jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(m, 1))));
  std::vector<Acc> total(static_cast<std::size_t>(j_max) + 1, 0);
  if (jobs == 1) {
    CliqueCounter counter(graph, j_max);
    for (std::size_t r = 0; r < m; ++r) counter.run_root(r);
    return counter.counts();
  }
  std::atomic<std::size_t> next{0};
  std::mutex merge;
  std::vector<std::thread> workers;
  for (unsigned t = 0; t < jobs; ++t) {
    workers.emplace_back([&] {
      CliqueCounter counter(graph, j_max);
      for (std::size_t r = next++; r < m; r = next++) counter.run_root(r);
      std::lock_guard lock(merge);
      for (std::size_t j = 0; j < total.size(); ++j) total[j] += counter.counts()[j];
    });
  }
  for (auto& w : workers) w.join();
  return total;
}

const BigInt& surjection_count(unsigned k, unsigned j) {
  static std::mutex mutex;
  static std::vector<std::vector<BigInt>> table;
  std::lock_guard lock(mutex);
  while (table.size() <= k) {
    const auto kk = static_cast<unsigned>(table.size());
    std::vector<BigInt> row(kk + 1);
    for (unsigned jj = 0; jj <= kk; ++jj) row[jj] = surjections(kk, jj);
    table.push_back(std::move(row));
  }
  static const BigInt zero = 0;
  return j < table[k].size() ? table[k][j] : zero;
}

}  // namespace

std::vector<BigInt> clique_counts(const GSet& d, const GSet& a, int j_max, unsigned jobs) {
  if (j_max < 1) throw Error(ErrorKind::InvalidInput, "clique size must be >= 1");
  const CliqueGraph graph(d, a);
  const auto counts = count_cliques(graph, j_max, jobs);
  std::vector<BigInt> out;
  for (std::size_t j = 1; j < counts.size(); ++j) out.push_back(to_big(counts[j]));
  return out;
}

std::vector<BigInt> t_counts(const GSet& d, const GSet& a, int k_max, unsigned jobs) {
  if (k_max < 1) throw Error(ErrorKind::InvalidInput, "k must be >= 1, got " + std::to_string(k_max));
  require_same_group(d, a);
  std::vector<BigInt> out(static_cast<std::size_t>(k_max), 0);
  if (a.empty() || !d.contains(d.group().zero())) return out;
  // An ordered tuple with repetitions is a surjection onto its set of
  // distinct entries, which must be a clique.
  const auto cliques = clique_counts(d, a, k_max, jobs);
  for (int k = 1; k <= k_max; ++k) {
    BigInt total = 0;
    for (int j = 1; j <= k; ++j) {
      const BigInt& c = cliques[static_cast<std::size_t>(j - 1)];
      if (c != 0) total += c * surjection_count(static_cast<unsigned>(k), static_cast<unsigned>(j));
    }
    out[static_cast<std::size_t>(k - 1)] = std::move(total);
  }
  return out;
}

TCount t_count(const GSet& d, const GSet& a, int k, unsigned jobs) {
  return TCount{k, t_counts(d, a, k, jobs).back()};
}

BigInt t_interval_closed_form(std::int64_t m, int k) {
  if (m < 0 || k < 1) throw Error(ErrorKind::InvalidInput, "closed form needs m >= 0 and k >= 1");
  const auto e = static_cast<unsigned>(k + 1);
  return ipow(BigInt(m + 1), e) - ipow(BigInt(m), e);
}

Rational corollary_bound(std::int64_t size_d, int k) {
  if (k < 3) throw Error(ErrorKind::HypothesisViolated, "corollary bound needs k >= 3");
  if (size_d < k) throw Error(ErrorKind::HypothesisViolated, "corollary bound needs |D| >= k");
  return Rational(BigInt(3 * k) * ipow(BigInt(size_d), static_cast<unsigned>(k)),
                  ipow(BigInt(2), static_cast<unsigned>(k + 1)));
}

Rational dense_tau_limit(int k) {
  const Rational by_k(2, k * k - k + 2);
  return std::min(Rational(1, 2), by_k);
}

Rational dense_bound(std::int64_t size_d, const Rational& tau, int k) {
  if (k < 1) throw Error(ErrorKind::HypothesisViolated, "dense bound needs k >= 1");
  if (tau <= 0 || tau > dense_tau_limit(k))
    throw Error(ErrorKind::HypothesisViolated,
                "tau = " + to_string(tau) + " outside (0, " + to_string(dense_tau_limit(k)) + "]");
  const Rational factor = 1 - Rational(k * (k - 1), 4) * tau;
  return factor * Rational(ipow(BigInt(size_d), static_cast<unsigned>(k)));
}

EnergyValue energy_kl(const GSet& set, int k, int l, EnergySide side, const Limits& limits) {
  if (k < 2 || l < 2) throw Error(ErrorKind::InvalidInput, "energy needs k, l >= 2");
  EnergyValue out{k, l, 0, side};
  if (side == EnergySide::via_k) out.value = higher_rep_profile(set, k, limits).moment(static_cast<unsigned>(l));
  else out.value = higher_rep_profile(set, l, limits).moment(static_cast<unsigned>(k));
  return out;
}

BigInt energy_k(const GSet& set, int k) {
  if (k < 1) throw Error(ErrorKind::InvalidInput, "energy exponent must be >= 1");
  BigInt total = 0;
  rep_table(set).for_each_nonzero([&](Element, std::uint64_t c) { total += ipow(BigInt(c), static_cast<unsigned>(k)); });
  return total;
}

CheckReport verify_id_ax(const GSet& a, const GSet& d, int k, const Limits& limits) {
  require_same_group(a, d);
  if (k < 1) throw Error(ErrorKind::InvalidInput, "k must be >= 1");
  if (!is_symmetric_with_zero(d)) throw Error(ErrorKind::NotSymmetric, "identity needs 0 in D = -D");

  CheckReport report;
  report.name = "id_ax";
  report.hypotheses_met = true;

  const BigInt direct = t_count(d, a, k + 1).value;

  // Σ over (d_1..d_k) ∈ D^k with d_i − d_j ∈ D of |A ∩ (A+d_1) ∩ ... ∩ (A+d_k)|
  BigInt via_tuples = 0;
  {
    const auto ds = d.elements();
    std::vector<Element> chosen;
    std::vector<Bitset> stack{a.bits()};
    std::uint64_t nodes = 0;
    std::function<void()> descend = [&] {
      if (chosen.size() == static_cast<std::size_t>(k)) {
        via_tuples += stack.back().count();
        return;
      }
      for (Element x : ds) {
        bool ok = true;
        for (Element y : chosen) {
          if (!contains_difference(d, x, y)) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        if (++nodes > limits.tuple_cap) throw Error(ErrorKind::CapExceeded, "difference-tuple enumeration cap");
        Bitset next = stack.back() & a.translate_clipped(x).bits();
        if (next.none()) continue;
        chosen.push_back(x);
        stack.push_back(std::move(next));
        descend();
        stack.pop_back();
        chosen.pop_back();
      }
    };
    descend();
  }

  BigInt via_slices = 0;
  for (Element x : a.elements()) {
    const GSet slice = a.intersect(d.translate_clipped(x));
    via_slices += t_count(d, slice, k).value;
  }

  report.lhs = Quantity::of(direct);
  report.rhs = Quantity::of(via_tuples);
  report.note("direct", direct);
  report.note("via_difference_tuples", via_tuples);
  report.note("via_slices", via_slices);
  report.verdict = (direct == via_tuples && direct == via_slices) ? Verdict::holds : Verdict::violated;
  report.instance = Json{{"check", "id_ax"}, {"a", to_json(a)}, {"d", to_json(d)}, {"k", k}};
  return report;
}

}  // namespace diffrep
