#include "diffrep/group.hpp"

#include <algorithm>
#include <sstream>

#include "diffrep/error.hpp"

namespace diffrep {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t n) noexcept {
  const std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

bool is_prime(std::int64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::int64_t next_prime_above(std::int64_t n) noexcept {
  std::int64_t p = n + 1;
  while (!is_prime(p)) ++p;
  return p;
}

GroupSpec GroupSpec::cyclic(std::int64_t order) {
  if (order < 1) throw Error(ErrorKind::InvalidInput, "cyclic order must be >= 1");
  GroupSpec g;
  g.kind_ = Kind::cyclic;
  g.carrier_ = static_cast<std::size_t>(order);
  g.factors_ = {order};
  return g;
}

GroupSpec GroupSpec::integer_window(std::int64_t halfwidth) {
  if (halfwidth < 1) throw Error(ErrorKind::InvalidInput, "window halfwidth must be >= 1");
  GroupSpec g;
  g.kind_ = Kind::integer_window;
  g.halfwidth_ = halfwidth;
  g.carrier_ = static_cast<std::size_t>(2 * halfwidth + 1);
  return g;
}

GroupSpec GroupSpec::product(std::vector<std::int64_t> orders) {
  if (orders.empty()) throw Error(ErrorKind::InvalidInput, "product needs at least one factor");
  std::size_t carrier = 1;
  for (auto n : orders) {
    if (n < 2) throw Error(ErrorKind::InvalidInput, "product factor orders must be >= 2");
    carrier *= static_cast<std::size_t>(n);
  }
  GroupSpec g;
  g.kind_ = Kind::product;
  g.carrier_ = carrier;
  g.factors_ = std::move(orders);
  return g;
}

bool GroupSpec::is_prime_cyclic() const noexcept { return kind_ == Kind::cyclic && is_prime(order()); }

bool GroupSpec::contains(Element e) const noexcept {
  if (kind_ == Kind::integer_window) return e.code >= -halfwidth_ && e.code <= halfwidth_;
  return e.code >= 0 && static_cast<std::size_t>(e.code) < carrier_;
}

std::size_t GroupSpec::index_of(Element e) const noexcept {
  if (kind_ == Kind::integer_window) return static_cast<std::size_t>(e.code + halfwidth_);
  return static_cast<std::size_t>(e.code);
}

Element GroupSpec::element_at(std::size_t index) const noexcept {
  if (kind_ == Kind::integer_window) return Element{static_cast<std::int64_t>(index) - halfwidth_};
  return Element{static_cast<std::int64_t>(index)};
}

Element GroupSpec::add(Element a, Element b) const {
  switch (kind_) {
    case Kind::cyclic: {
      const auto n = order();
      std::int64_t s = a.code + b.code;
      if (s >= n) s -= n;
      return Element{s};
    }
    case Kind::integer_window: {
      const std::int64_t s = a.code + b.code;
      if (s < -halfwidth_ || s > halfwidth_) {
        throw Error(ErrorKind::WindowOverflow, std::to_string(a.code) + " + " + std::to_string(b.code) +
                                                   " leaves [-" + std::to_string(halfwidth_) + ", " +
                                                   std::to_string(halfwidth_) + "]");
      }
      return Element{s};
    }
    case Kind::product: {
      std::int64_t ia = a.code, ib = b.code, out = 0, place = 1;
      for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
        const std::int64_t n = *it;
        std::int64_t c = ia % n + ib % n;
        if (c >= n) c -= n;
        out += c * place;
        place *= n;
        ia /= n;
        ib /= n;
      }
      return Element{out};
    }
  }
  return a;
}

Element GroupSpec::negate(Element a) const noexcept {
  switch (kind_) {
    case Kind::cyclic: return Element{a.code == 0 ? 0 : order() - a.code};
    case Kind::integer_window: return Element{-a.code};
    case Kind::product: {
      std::int64_t ia = a.code, out = 0, place = 1;
      for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
        const std::int64_t n = *it;
        const std::int64_t c = ia % n;
        out += (c == 0 ? 0 : n - c) * place;
        place *= n;
        ia /= n;
      }
      return Element{out};
    }
  }
  return a;
}

std::int64_t GroupSpec::signed_value(Element e) const noexcept {
  if (kind_ != Kind::cyclic) return e.code;
  const auto n = order();
  return e.code > n / 2 ? e.code - n : e.code;
}

Element GroupSpec::from_integer(std::int64_t value) const {
  switch (kind_) {
    case Kind::cyclic: return Element{floor_mod(value, order())};
    case Kind::integer_window:
      if (value < -halfwidth_ || value > halfwidth_)
        throw Error(ErrorKind::WindowOverflow, std::to_string(value) + " outside window of halfwidth " +
                                                   std::to_string(halfwidth_));
      return Element{value};
    case Kind::product:
      if (value < 0 || static_cast<std::size_t>(value) >= carrier_)
        throw Error(ErrorKind::InvalidInput, "mixed-radix index " + std::to_string(value) + " out of range");
      return Element{value};
  }
  return Element{value};
}

std::vector<std::int64_t> GroupSpec::coordinates(Element e) const {
  if (kind_ != Kind::product) return {e.code};
  std::vector<std::int64_t> coords(factors_.size());
  std::int64_t rest = e.code;
  for (std::size_t i = factors_.size(); i-- > 0;) {
    coords[i] = rest % factors_[i];
    rest /= factors_[i];
  }
  return coords;
}

Element GroupSpec::from_coordinates(std::span<const std::int64_t> coords) const {
  if (kind_ != Kind::product) {
    if (coords.size() != 1) throw Error(ErrorKind::InvalidInput, "expected a single coordinate");
    return from_integer(coords[0]);
  }
  if (coords.size() != factors_.size())
    throw Error(ErrorKind::InvalidInput, "expected " + std::to_string(factors_.size()) + " coordinates");
  std::int64_t code = 0;
  for (std::size_t i = 0; i < coords.size(); ++i) code = code * factors_[i] + floor_mod(coords[i], factors_[i]);
  return Element{code};
}

std::string GroupSpec::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::cyclic: os << "C_" << order(); break;
    case Kind::integer_window: os << "Z[-" << halfwidth_ << "," << halfwidth_ << "]"; break;
    case Kind::product:
      for (std::size_t i = 0; i < factors_.size(); ++i) os << (i ? "xZ_" : "Z_") << factors_[i];
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

GSet::GSet(GroupSpec group) : group_(std::move(group)), bits_(group_.carrier_size()) {
  if (group_.carrier_size() > default_limits().carrier_cap)
    throw Error(ErrorKind::CapExceeded, "carrier of " + group_.describe() + " exceeds the bit-vector cap");
}

GSet::GSet(GroupSpec group, Bitset bits)
    : group_(std::move(group)), bits_(std::move(bits)), cardinality_(bits_.count()) {}

GSet GSet::from_elements(const GroupSpec& group, std::span<const Element> elements) {
  GSet out(group);
  for (Element e : elements) {
    if (!group.contains(e))
      throw Error(ErrorKind::InvalidInput, "element " + std::to_string(e.code) + " not in " + group.describe());
    out.bits_.set(group.index_of(e));
  }
  out.cardinality_ = out.bits_.count();
  return out;
}

GSet GSet::from_integers(const GroupSpec& group, std::span<const std::int64_t> values) {
  std::vector<Element> elements;
  elements.reserve(values.size());
  for (auto v : values) elements.push_back(group.from_integer(v));
  return from_elements(group, elements);
}

GSet GSet::from_bits(const GroupSpec& group, Bitset bits) {
  if (bits.size() != group.carrier_size()) throw Error(ErrorKind::InvalidInput, "bit-vector length mismatch");
  return GSet(group, std::move(bits));
}

bool GSet::contains(Element e) const noexcept { return group_.contains(e) && bits_.test(group_.index_of(e)); }

std::vector<Element> GSet::elements() const {
  std::vector<Element> out;
  out.reserve(cardinality_);
  bits_.for_each([&](std::size_t i) { out.push_back(group_.element_at(i)); });
  return out;
}

GSet GSet::translate(Element d) const {
  if (!group_.contains(d)) throw Error(ErrorKind::InvalidInput, "translation element not in group");
  switch (group_.kind()) {
    case GroupSpec::Kind::cyclic: return GSet(group_, bits_.rotated(static_cast<std::size_t>(d.code)));
    case GroupSpec::Kind::integer_window: {
      bool lost = false;
      Bitset out = bits_.shifted(d.code, &lost);
      if (lost)
        throw Error(ErrorKind::WindowOverflow, "translate by " + std::to_string(d.code) + " leaves " + group_.describe());
      return GSet(group_, std::move(out));
    }
    case GroupSpec::Kind::product: {
      Bitset out(bits_.size());
      bits_.for_each([&](std::size_t i) { out.set(group_.index_of(group_.add(group_.element_at(i), d))); });
      return GSet(group_, std::move(out));
    }
  }
  return *this;
}

GSet GSet::translate_clipped(Element d) const {
  if (group_.kind() == GroupSpec::Kind::integer_window) return GSet(group_, bits_.shifted(d.code));
  return translate(d);
}

bool contains_difference(const GSet& set, Element x, Element y) noexcept {
  const GroupSpec& g = set.group();
  if (g.kind() == GroupSpec::Kind::integer_window) return set.contains(Element{x.code - y.code});
  return set.contains(g.add(x, g.negate(y)));
}

void require_same_group(const GSet& a, const GSet& b) {
  if (!(a.group() == b.group()))
    throw Error(ErrorKind::GroupMismatch, a.group().describe() + " vs " + b.group().describe());
}

GSet GSet::intersect(const GSet& other) const {
  require_same_group(*this, other);
  return GSet(group_, bits_ & other.bits_);
}

GSet GSet::unite(const GSet& other) const {
  require_same_group(*this, other);
  return GSet(group_, bits_ | other.bits_);
}

GSet GSet::negate() const {
  Bitset out(bits_.size());
  bits_.for_each([&](std::size_t i) { out.set(group_.index_of(group_.negate(group_.element_at(i)))); });
  return GSet(group_, std::move(out));
}

GSet GSet::complement() const {
  Bitset out(bits_.size());
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (!bits_.test(i)) out.set(i);
  return GSet(group_, std::move(out));
}

// ---------------------------------------------------------------------------

GSet centered_interval(const GroupSpec& group, std::int64_t size) {
  if (group.kind() == GroupSpec::Kind::product)
    throw Error(ErrorKind::InvalidInput, "centered intervals need a cyclic group or integer window");
  if (size < 1 || static_cast<std::size_t>(size) > group.carrier_size())
    throw Error(ErrorKind::SizeOutOfRange,
                "interval size " + std::to_string(size) + " not in [1, " + std::to_string(group.carrier_size()) + "]");
  const std::int64_t m = size / 2;
  const std::int64_t lo = size % 2 == 0 ? -(m - 1) : -m;
  std::vector<Element> elements;
  elements.reserve(static_cast<std::size_t>(size));
  for (std::int64_t x = lo; x <= m; ++x) elements.push_back(group.from_integer(x));
  return GSet::from_elements(group, elements);
}

bool is_symmetric_with_zero(const GSet& set) {
  const GroupSpec& g = set.group();
  if (!set.contains(g.zero())) return false;
  bool symmetric = true;
  set.bits().for_each([&](std::size_t i) {
    if (symmetric && !set.contains(g.negate(g.element_at(i)))) symmetric = false;
  });
  return symmetric;
}

namespace {

// Representatives of the negation orbits {x, -x} of nonzero elements.
std::vector<std::pair<Element, Element>> negation_orbits(const GroupSpec& group) {
  std::vector<std::pair<Element, Element>> orbits;
  for (std::size_t i = 0; i < group.carrier_size(); ++i) {
    const Element x = group.element_at(i);
    if (x == group.zero()) continue;
    const Element y = group.negate(x);
    if (group.index_of(y) >= i) orbits.emplace_back(x, y);
  }
  return orbits;
}

}  // namespace

std::uint64_t symmetric_set_count(const GroupSpec& group) {
  const auto orbits = negation_orbits(group).size();
  if (orbits >= 64) throw Error(ErrorKind::CapExceeded, "too many symmetric sets to count in 64 bits");
  return std::uint64_t{1} << orbits;
}

void for_each_symmetric_set(const GroupSpec& group, const std::function<void(const GSet&)>& visit,
                            const Limits& limits) {
  if (static_cast<std::int64_t>(group.carrier_size()) > limits.symmetric_order_cap)
    throw Error(ErrorKind::CapExceeded, group.describe() + " exceeds the symmetric enumeration cap of " +
                                            std::to_string(limits.symmetric_order_cap));
  const auto orbits = negation_orbits(group);
  const std::uint64_t total = std::uint64_t{1} << orbits.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    Bitset bits(group.carrier_size());
    bits.set(group.index_of(group.zero()));
    for (std::size_t j = 0; j < orbits.size(); ++j) {
      if (mask >> j & 1U) {
        bits.set(group.index_of(orbits[j].first));
        bits.set(group.index_of(orbits[j].second));
      }
    }
    visit(GSet::from_bits(group, std::move(bits)));
  }
}

std::vector<GSet> enumerate_symmetric_sets(const GroupSpec& group, const Limits& limits) {
  std::vector<GSet> out;
  for_each_symmetric_set(group, [&](const GSet& d) { out.push_back(d); }, limits);
  return out;
}

}  // namespace diffrep
