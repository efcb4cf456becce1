#include "diffrep/bitset.hpp"

namespace diffrep {

Bitset Bitset::rotated(std::size_t shift) const {
  Bitset out(nbits_);
  if (nbits_ == 0) return out;
  shift %= nbits_;
  if (shift == 0) return *this;
  for_each([&](std::size_t i) {
    std::size_t j = i + shift;
    if (j >= nbits_) j -= nbits_;
    out.set(j);
  });
  return out;
}

Bitset Bitset::shifted(std::ptrdiff_t shift, bool* lost) const {
  Bitset out(nbits_);
  bool dropped = false;
  const auto n = static_cast<std::ptrdiff_t>(nbits_);
  if (shift % static_cast<std::ptrdiff_t>(kWordBits) == 0) {
    const std::ptrdiff_t ws = shift / static_cast<std::ptrdiff_t>(kWordBits);
    const auto nw = static_cast<std::ptrdiff_t>(words_.size());
    for (std::ptrdiff_t w = 0; w < nw; ++w) {
      if (!words_[w]) continue;
      const std::ptrdiff_t t = w + ws;
      if (t < 0 || t >= nw) dropped = true;
      else out.words_[t] = words_[w];
    }
    // clear bits above nbits_ in the top word
    if (nbits_ % kWordBits && !out.words_.empty()) {
      const Word mask = (Word{1} << (nbits_ % kWordBits)) - 1;
      if (out.words_.back() & ~mask) dropped = true;
      out.words_.back() &= mask;
    }
  } else {
    for_each([&](std::size_t i) {
      const std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i) + shift;
      if (j < 0 || j >= n) dropped = true;
      else out.set(static_cast<std::size_t>(j));
    });
  }
  if (lost) *lost = dropped;
  return out;
}

std::vector<std::size_t> Bitset::indices() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for_each([&](std::size_t i) { out.push_back(i); });
  return out;
}

}  // namespace diffrep
