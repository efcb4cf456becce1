#include "diffrep/repfn.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include <fftw3.h>

#include "diffrep/error.hpp"

namespace diffrep {

namespace {

void require_nonempty(const GSet& set) {
  if (set.empty()) throw Error(ErrorKind::EmptySet, "set is empty");
}

void require_window_fits(const GSet& set) {
  const GroupSpec& g = set.group();
  if (g.kind() != GroupSpec::Kind::integer_window || set.empty()) return;
  const auto elems = set.elements();
  const std::int64_t spread = elems.back().code - elems.front().code;
  if (spread > g.halfwidth())
    throw Error(ErrorKind::WindowOverflow, "A - A spans +-" + std::to_string(spread) + ", beyond " + g.describe());
}

std::vector<std::uint64_t> direct_counts(const GSet& set) {
  const GroupSpec& g = set.group();
  std::vector<std::uint64_t> counts(g.carrier_size(), 0);
  const auto elems = set.elements();
  for (Element a : elems)
    for (Element b : elems) ++counts[g.index_of(g.subtract(a, b))];
  return counts;
}

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

// Autocorrelation of the indicator through a real multi-dimensional DFT.
// Returns false if the rounded result fails the exactness checks.
bool fft_counts(const GSet& set, std::vector<std::uint64_t>& counts) {
  const GroupSpec& g = set.group();
  const std::size_t n = g.carrier_size();
  std::vector<int> dims;
  for (auto f : g.factors()) dims.push_back(static_cast<int>(f));
  const std::size_t last = static_cast<std::size_t>(dims.back());
  const std::size_t spectrum = n / last * (last / 2 + 1);

  double* real = fftw_alloc_real(n);
  fftw_complex* freq = fftw_alloc_complex(spectrum);
  fftw_plan forward, backward;
  {
    std::lock_guard lock(fftw_planner_mutex());
    forward = fftw_plan_dft_r2c(static_cast<int>(dims.size()), dims.data(), real, freq, FFTW_ESTIMATE);
    backward = fftw_plan_dft_c2r(static_cast<int>(dims.size()), dims.data(), freq, real, FFTW_ESTIMATE);
  }
  std::fill(real, real + n, 0.0);
  set.bits().for_each([&](std::size_t i) { real[i] = 1.0; });
  fftw_execute(forward);
  for (std::size_t i = 0; i < spectrum; ++i) {
    const double re = freq[i][0], im = freq[i][1];
    freq[i][0] = re * re + im * im;
    freq[i][1] = 0.0;
  }
  fftw_execute(backward);

  bool ok = true;
  counts.assign(n, 0);
  BigInt total = 0;
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = real[i] * scale;
    const double r = std::nearbyint(v);
    if (std::abs(v - r) > 0.25 || r < 0) ok = false;
    counts[i] = static_cast<std::uint64_t>(std::max(0.0, r));
    total += counts[i];
  }
  const BigInt expected = BigInt(set.size()) * set.size();
  if (total != expected || counts[g.index_of(g.zero())] != set.size()) ok = false;

  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }
  fftw_free(real);
  fftw_free(freq);
  return ok;
}

}  // namespace

// ---------------------------------------------------------------------------

RepTable::RepTable(GroupSpec group, std::vector<std::uint64_t> counts)
    : group_(std::move(group)), counts_(std::move(counts)) {
  if (counts_.size() != group_.carrier_size()) throw Error(ErrorKind::InvalidInput, "rep table length mismatch");
}

std::uint64_t RepTable::count(Element d) const noexcept {
  return group_.contains(d) ? counts_[group_.index_of(d)] : 0;
}

BigInt RepTable::total() const {
  BigInt t = 0;
  for (auto c : counts_) t += c;
  return t;
}

GSet diff_set(const GSet& set) {
  require_nonempty(set);
  require_window_fits(set);
  const GroupSpec& g = set.group();
  if (g.is_cyclic()) {
    // union of the rotations A - a
    Bitset bits(g.carrier_size());
    const std::size_t n = g.carrier_size();
    set.bits().for_each([&](std::size_t a) { bits |= set.bits().rotated(n - a); });
    return GSet::from_bits(g, std::move(bits));
  }
  Bitset bits(g.carrier_size());
  const auto elems = set.elements();
  for (Element a : elems)
    for (Element b : elems) bits.set(g.index_of(g.subtract(a, b)));
  return GSet::from_bits(g, std::move(bits));
}

RepTable rep_table(const GSet& set, RepMethod method) {
  require_nonempty(set);
  require_window_fits(set);
  const GroupSpec& g = set.group();
  const bool fft_capable = g.kind() != GroupSpec::Kind::integer_window;
  bool use_fft = false;
  switch (method) {
    case RepMethod::direct: break;
    case RepMethod::fft:
      if (!fft_capable) throw Error(ErrorKind::InvalidInput, "FFT rep table needs a cyclic or product group");
      use_fft = true;
      break;
    case RepMethod::automatic: use_fft = fft_capable && g.carrier_size() >= 512; break;
  }
  if (use_fft) {
    std::vector<std::uint64_t> counts;
    if (fft_counts(set, counts)) return RepTable(g, std::move(counts));
  }
  return RepTable(g, direct_counts(set));
}

MuResult mu_with_witness(const GSet& set) {
  if (set.size() <= 1) throw Error(ErrorKind::Degenerate, "mu needs |A| >= 2");
  const RepTable table = rep_table(set);
  const GroupSpec& g = set.group();
  MuResult best;
  table.for_each_nonzero([&](Element d, std::uint64_t c) {
    if (d != g.zero() && c > best.value) best = MuResult{c, d};
  });
  return best;
}

// ---------------------------------------------------------------------------

namespace {

// Depth-first refinement of A ∩ (A + x_1) ∩ ... over x_i in A − A.
class TupleSearch {
 public:
  TupleSearch(const GSet& set, const Limits& limits) : set_(set), limits_(limits) {
    require_nonempty(set);
    diffs_ = diff_set(set).elements();
    const std::size_t words = Bitset::word_count(set.group().carrier_size());
    if (diffs_.size() * words <= (std::size_t{1} << 25)) {
      translates_.reserve(diffs_.size());
      for (Element x : diffs_) translates_.push_back(set.translate_clipped(x).bits());
    }
  }

  const std::vector<Element>& diffs() const noexcept { return diffs_; }

  Bitset translate(std::size_t i) const {
    return translates_.empty() ? set_.translate_clipped(diffs_[i]).bits() : translates_[i];
  }

  /// current ∩ (A + diffs[i]) into out.
  void intersect(const Bitset& current, std::size_t i, Bitset& out) {
    if (++nodes_ > limits_.tuple_cap)
      throw Error(ErrorKind::CapExceeded, "tuple search exceeded cap of " + std::to_string(limits_.tuple_cap) + " nodes");
    if (translates_.empty()) {
      out = current & translate(i);
      return;
    }
    const auto a = current.words();
    const auto b = translates_[i].words();
    auto o = out.words();
    for (std::size_t w = 0; w < a.size(); ++w) o[w] = a[w] & b[w];
  }

 private:
  const GSet& set_;
  const Limits& limits_;
  std::vector<Element> diffs_;
  std::vector<Bitset> translates_;
  std::uint64_t nodes_ = 0;
};

void require_arity(int k) {
  if (k < 2) throw Error(ErrorKind::InvalidInput, "k must be >= 2, got " + std::to_string(k));
}

}  // namespace

void for_each_higher_rep(const GSet& set, int k,
                         const std::function<void(std::span<const Element>, std::uint64_t)>& visit,
                         const Limits& limits) {
  require_arity(k);
  TupleSearch search(set, limits);
  const std::size_t depth = static_cast<std::size_t>(k - 1);
  std::vector<Bitset> stack(depth + 1, Bitset(set.group().carrier_size()));
  stack[0] = set.bits();
  std::vector<Element> tuple(depth);
  const auto& diffs = search.diffs();

  std::function<void(std::size_t)> descend = [&](std::size_t level) {
    for (std::size_t i = 0; i < diffs.size(); ++i) {
      search.intersect(stack[level], i, stack[level + 1]);
      if (stack[level + 1].none()) continue;
      tuple[level] = diffs[i];
      if (level + 1 == depth) visit(tuple, stack[level + 1].count());
      else descend(level + 1);
    }
  };
  descend(0);
}

SparseRepTable::SparseRepTable(int arity, std::vector<Entry> entries) : arity_(arity), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) { return a.tuple < b.tuple; });
}

std::uint64_t SparseRepTable::at(std::span<const Element> tuple) const {
  const std::vector<Element> key(tuple.begin(), tuple.end());
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                             [](const Entry& e, const std::vector<Element>& k) { return e.tuple < k; });
  return it != entries_.end() && it->tuple == key ? it->value : 0;
}

BigInt SparseRepTable::total_mass() const {
  BigInt t = 0;
  for (const auto& e : entries_) t += e.value;
  return t;
}

SparseRepTable higher_rep(const GSet& set, int k, const Limits& limits) {
  std::vector<SparseRepTable::Entry> entries;
  for_each_higher_rep(
      set, k,
      [&](std::span<const Element> tuple, std::uint64_t value) {
        entries.push_back({std::vector<Element>(tuple.begin(), tuple.end()), value});
      },
      limits);
  return SparseRepTable(k - 1, std::move(entries));
}

std::uint64_t RepProfile::support_size() const {
  std::uint64_t s = 0;
  for (std::size_t v = 1; v < tuples_with_value.size(); ++v) s += tuples_with_value[v];
  return s;
}

BigInt RepProfile::mass() const { return moment(1); }

BigInt RepProfile::moment(unsigned power) const {
  BigInt total = 0;
  for (std::size_t v = 1; v < tuples_with_value.size(); ++v)
    if (tuples_with_value[v]) total += BigInt(tuples_with_value[v]) * ipow(BigInt(v), power);
  return total;
}

RepProfile higher_rep_profile(const GSet& set, int k, const Limits& limits) {
  require_arity(k);
  RepProfile profile;
  profile.k = k;
  profile.tuples_with_value.assign(set.size() + 1, 0);
  if (k == 2) {
    // the rep table already is the support of R^(2)
    rep_table(set).for_each_nonzero([&](Element, std::uint64_t c) { ++profile.tuples_with_value[c]; });
    return profile;
  }
  for_each_higher_rep(
      set, k, [&](std::span<const Element>, std::uint64_t value) { ++profile.tuples_with_value[value]; }, limits);
  return profile;
}

std::uint64_t support_size_higher(const GSet& set, int k, const Limits& limits) {
  return higher_rep_profile(set, k, limits).support_size();
}

MuKResult mu_k(const GSet& set, int k, const Limits& limits) {
  require_arity(k);
  if (set.size() < static_cast<std::size_t>(k))
    throw Error(ErrorKind::Degenerate, "mu_k needs |A| >= k");
  TupleSearch search(set, limits);
  const GroupSpec& g = set.group();
  const std::size_t depth = static_cast<std::size_t>(k - 1);
  std::vector<Bitset> stack(depth + 1, Bitset(g.carrier_size()));
  stack[0] = set.bits();
  std::vector<Element> tuple(depth);
  const auto& diffs = search.diffs();
  MuKResult best;

  // R is symmetric in its arguments, so strictly increasing tuples suffice;
  // intersections only shrink, so a branch no larger than the best is cut.
  std::function<void(std::size_t, std::size_t)> descend = [&](std::size_t level, std::size_t start) {
    for (std::size_t i = start; i < diffs.size(); ++i) {
      if (diffs[i] == g.zero()) continue;
      search.intersect(stack[level], i, stack[level + 1]);
      const std::size_t size = stack[level + 1].count();
      if (size == 0 || (best.found && size <= best.value)) continue;
      tuple[level] = diffs[i];
      if (level + 1 == depth) {
        best.value = size;
        best.found = true;
        best.witness = tuple;
      } else {
        descend(level + 1, i + 1);
      }
    }
  };
  descend(0, 0);
  return best;
}

}  // namespace diffrep
