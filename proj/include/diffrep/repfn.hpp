#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "diffrep/group.hpp"
#include "diffrep/limits.hpp"
#include "diffrep/numeric.hpp"

namespace diffrep {

/// r_A(d) = |A ∩ (A + d)| for every d in the carrier.
class RepTable {
 public:
  RepTable(GroupSpec group, std::vector<std::uint64_t> counts);

  const GroupSpec& group() const noexcept { return group_; }
  std::uint64_t count(Element d) const noexcept;
  std::span<const std::uint64_t> counts() const noexcept { return counts_; }
  /// Sum over all d; equals |A|^2.
  BigInt total() const;

  /// Visits (d, r_A(d)) for every d with r_A(d) > 0 in carrier-index order.
  template <typename Fn>
  void for_each_nonzero(Fn&& fn) const {
    for (std::size_t i = 0; i < counts_.size(); ++i)
      if (counts_[i]) fn(group_.element_at(i), counts_[i]);
  }

  friend bool operator==(const RepTable& a, const RepTable& b) noexcept {
    return a.group_ == b.group_ && a.counts_ == b.counts_;
  }

 private:
  GroupSpec group_;
  std::vector<std::uint64_t> counts_;
};

enum class RepMethod { automatic, direct, fft };

/// A − A. Throws EmptySet, or WindowOverflow when a difference leaves the window.
GSet diff_set(const GSet& set);

/// Direct O(|A|^2) accumulation, or FFT autocorrelation for cyclic and
/// product groups (automatic switches at carrier >= 512). The FFT path is
/// rounded and verified; it falls back to direct counting if verification fails.
RepTable rep_table(const GSet& set, RepMethod method = RepMethod::automatic);

struct MuResult {
  std::uint64_t value = 0;
  Element witness;  // a nonzero d attaining the value
};

/// Second largest value of r_A. Throws Degenerate when |A| <= 1.
MuResult mu_with_witness(const GSet& set);
inline std::uint64_t mu(const GSet& set) { return mu_with_witness(set).value; }

/// Visits every tuple (x_1..x_{k-1}) with R_A^(k)(x) > 0, in lexicographic
/// carrier-index order, together with its value. Throws CapExceeded once
/// more than limits.tuple_cap search nodes have been expanded.
void for_each_higher_rep(const GSet& set, int k,
                         const std::function<void(std::span<const Element>, std::uint64_t)>& visit,
                         const Limits& limits = default_limits());

/// Support of R_A^(k).
class SparseRepTable {
 public:
  struct Entry {
    std::vector<Element> tuple;
    std::uint64_t value;
  };

  SparseRepTable(int arity, std::vector<Entry> entries);

  int arity() const noexcept { return arity_; }
  std::size_t support_size() const noexcept { return entries_.size(); }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  /// R_A^(k) at the tuple; zero off the support.
  std::uint64_t at(std::span<const Element> tuple) const;
  BigInt total_mass() const;

 private:
  int arity_;
  std::vector<Entry> entries_;  // sorted by tuple
};

SparseRepTable higher_rep(const GSet& set, int k, const Limits& limits = default_limits());

/// Number of support tuples of R_A^(k) holding each value v = 0..|A|.
struct RepProfile {
  int k = 2;
  std::vector<std::uint64_t> tuples_with_value;

  std::uint64_t support_size() const;
  BigInt mass() const;
  /// Σ over the support of R^power.
  BigInt moment(unsigned power) const;
};

RepProfile higher_rep_profile(const GSet& set, int k, const Limits& limits = default_limits());

std::uint64_t support_size_higher(const GSet& set, int k, const Limits& limits = default_limits());

struct MuKResult {
  std::uint64_t value = 0;
  bool found = false;  // false when no tuple of distinct nonzero differences meets A
  std::vector<Element> witness;
};

/// Maximum of R_A^(k) over (k−1)-tuples with pairwise distinct nonzero components.
MuKResult mu_k(const GSet& set, int k, const Limits& limits = default_limits());

}  // namespace diffrep
