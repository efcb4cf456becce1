#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "diffrep/bitset.hpp"
#include "diffrep/limits.hpp"

namespace diffrep {

/// Canonical integer encoding of a group element:
///   cyclic          residue in [0, n)
///   integer_window  signed value in [-W, W]
///   product         mixed-radix index, first factor most significant
struct Element {
  std::int64_t code = 0;

  friend auto operator<=>(const Element&, const Element&) = default;
};

/// Ambient finite abelian group (or bounded window of the integers).
class GroupSpec {
 public:
  enum class Kind { cyclic, integer_window, product };

  static GroupSpec cyclic(std::int64_t order);
  static GroupSpec integer_window(std::int64_t halfwidth);
  static GroupSpec product(std::vector<std::int64_t> orders);

  Kind kind() const noexcept { return kind_; }
  bool is_cyclic() const noexcept { return kind_ == Kind::cyclic; }
  bool is_prime_cyclic() const noexcept;

  /// n for cyclic groups, 2W+1 for windows, the product of the orders otherwise.
  std::size_t carrier_size() const noexcept { return carrier_; }
  std::int64_t order() const noexcept { return static_cast<std::int64_t>(carrier_); }
  std::int64_t halfwidth() const noexcept { return halfwidth_; }
  const std::vector<std::int64_t>& factors() const noexcept { return factors_; }

  bool contains(Element e) const noexcept;
  std::size_t index_of(Element e) const noexcept;
  Element element_at(std::size_t index) const noexcept;

  Element zero() const noexcept { return Element{0}; }
  /// Group sum. Throws Error(WindowOverflow) if an integer_window sum leaves [-W, W].
  Element add(Element a, Element b) const;
  Element negate(Element a) const noexcept;
  Element subtract(Element a, Element b) const { return add(a, negate(b)); }

  /// Residues reported in [-floor(n/2), ceil(n/2)); identity for windows.
  std::int64_t signed_value(Element e) const noexcept;
  /// Maps an arbitrary integer into the group (reduction mod n for cyclic
  /// groups, range check for windows). Throws on a window escape.
  Element from_integer(std::int64_t value) const;

  std::vector<std::int64_t> coordinates(Element e) const;
  Element from_coordinates(std::span<const std::int64_t> coords) const;

  std::string describe() const;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) noexcept {
    return a.kind_ == b.kind_ && a.halfwidth_ == b.halfwidth_ && a.factors_ == b.factors_;
  }

 private:
  GroupSpec() = default;

  Kind kind_ = Kind::cyclic;
  std::size_t carrier_ = 1;
  std::int64_t halfwidth_ = 0;
  std::vector<std::int64_t> factors_;  // single entry for cyclic groups
};

/// Finite subset of a group, stored as a bit-vector over the carrier.
class GSet {
 public:
  explicit GSet(GroupSpec group);

  static GSet from_elements(const GroupSpec& group, std::span<const Element> elements);
  /// Convenience: integers are mapped with GroupSpec::from_integer.
  static GSet from_integers(const GroupSpec& group, std::span<const std::int64_t> values);
  static GSet from_bits(const GroupSpec& group, Bitset bits);

  const GroupSpec& group() const noexcept { return group_; }
  std::size_t size() const noexcept { return cardinality_; }
  bool empty() const noexcept { return cardinality_ == 0; }
  bool contains(Element e) const noexcept;
  const Bitset& bits() const noexcept { return bits_; }

  /// Members in carrier-index order.
  std::vector<Element> elements() const;

  /// A + d. Throws WindowOverflow if a window translate escapes.
  GSet translate(Element d) const;
  /// A + d with members leaving a window silently dropped.
  GSet translate_clipped(Element d) const;
  GSet intersect(const GSet& other) const;
  GSet unite(const GSet& other) const;
  GSet negate() const;
  /// Set complement within the carrier.
  GSet complement() const;

  friend bool operator==(const GSet& a, const GSet& b) noexcept {
    return a.group_ == b.group_ && a.bits_ == b.bits_;
  }

 private:
  GSet(GroupSpec group, Bitset bits);

  GroupSpec group_;
  Bitset bits_;
  std::size_t cardinality_ = 0;
};

/// True iff x − y lies in the set. Never throws: a window difference that
/// leaves the window is simply not a member.
bool contains_difference(const GSet& set, Element x, Element y) noexcept;

/// Throws Error(GroupMismatch) unless both sets live in the same group.
void require_same_group(const GSet& a, const GSet& b);

/// Interval of the given size centered at 0 with the extra element on the
/// right for even sizes: [-(m-1), m] for size 2m, [-m, m] for size 2m+1.
GSet centered_interval(const GroupSpec& group, std::int64_t size);

/// True iff 0 lies in D and D = -D.
bool is_symmetric_with_zero(const GSet& set);

/// Number of sets D with 0 in D = -D in the group.
std::uint64_t symmetric_set_count(const GroupSpec& group);

/// Calls `visit` for every D with 0 in D = -D, in a fixed order.
/// Throws Error(CapExceeded) when the carrier exceeds limits.symmetric_order_cap.
void for_each_symmetric_set(const GroupSpec& group, const std::function<void(const GSet&)>& visit,
                            const Limits& limits = default_limits());

std::vector<GSet> enumerate_symmetric_sets(const GroupSpec& group,
                                           const Limits& limits = default_limits());

bool is_prime(std::int64_t n) noexcept;
std::int64_t next_prime_above(std::int64_t n) noexcept;

}  // namespace diffrep
