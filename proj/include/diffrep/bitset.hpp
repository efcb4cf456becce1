#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace diffrep {

/// Fixed-length dense bit-vector. Bits past size() are always zero.
class Bitset {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  Bitset() = default;
  explicit Bitset(std::size_t nbits) : nbits_(nbits), words_(word_count(nbits), 0) {}

  static constexpr std::size_t word_count(std::size_t nbits) noexcept {
    return (nbits + kWordBits - 1) / kWordBits;
  }

  std::size_t size() const noexcept { return nbits_; }
  std::span<const Word> words() const noexcept { return words_; }
  std::span<Word> words() noexcept { return words_; }

  bool test(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i) noexcept { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
  void reset(std::size_t i) noexcept { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }

  std::size_t count() const noexcept {
    std::size_t n = 0;
    for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool any() const noexcept {
    for (Word w : words_)
      if (w) return true;
    return false;
  }
  bool none() const noexcept { return !any(); }

  /// Index of the lowest set bit, or size() if none.
  std::size_t first() const noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w]) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[w]));
    return nbits_;
  }

  Bitset& operator&=(const Bitset& other) noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
    return *this;
  }
  Bitset& operator|=(const Bitset& other) noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
    return *this;
  }
  friend Bitset operator&(Bitset a, const Bitset& b) noexcept { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) noexcept { return a |= b; }
  friend bool operator==(const Bitset& a, const Bitset& b) noexcept = default;

  /// Cyclic rotation: bit i moves to (i + shift) mod size().
  Bitset rotated(std::size_t shift) const;

  /// Non-cyclic shift by a signed amount; bits falling off either end are
  /// dropped. `lost` is set when any set bit was dropped.
  Bitset shifted(std::ptrdiff_t shift, bool* lost = nullptr) const;

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits) {
        fn(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  std::vector<std::size_t> indices() const;

 private:
  std::size_t nbits_ = 0;
  std::vector<Word> words_;
};

}  // namespace diffrep
