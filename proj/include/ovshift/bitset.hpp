#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace ovshift {

/// Fixed-size dynamic bitset sized at construction. Only the operations the
/// graph algorithms need: no iterators, no proxies.
class Bitset {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Bitset() = default;
  explicit Bitset(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::size_t size() const { return bits_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  void set_all() {
    for (auto& w : words_) w = ~std::uint64_t{0};
    trim();
  }
  void reset_all() {
    for (auto& w : words_) w = 0;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }
  bool all() const { return count() == bits_; }

  std::size_t find_first() const { return find_from_word(0); }
  std::size_t find_next(std::size_t i) const {
    ++i;
    if (i >= bits_) return npos;
    std::size_t wi = i >> 6;
    std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (i & 63));
    if (w) return (wi << 6) + static_cast<std::size_t>(std::countr_zero(w));
    return find_from_word(wi + 1);
  }

  Bitset& operator|=(const Bitset& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }
  Bitset& operator&=(const Bitset& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  /// this &= ~o
  Bitset& subtract(const Bitset& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
    return *this;
  }
  bool is_subset_of(const Bitset& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & ~o.words_[k]) return false;
    return true;
  }
  /// |this \ o|, counting no further than `cap`.
  std::size_t count_outside(const Bitset& o, std::size_t cap) const {
    std::size_t c = 0;
    for (std::size_t k = 0; k < words_.size() && c < cap; ++k)
      c += static_cast<std::size_t>(std::popcount(words_[k] & ~o.words_[k]));
    return std::min(c, cap);
  }
  bool intersects(const Bitset& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & o.words_[k]) return true;
    return false;
  }
  std::size_t intersection_count(const Bitset& o) const {
    std::size_t c = 0;
    for (std::size_t k = 0; k < words_.size(); ++k)
      c += static_cast<std::size_t>(std::popcount(words_[k] & o.words_[k]));
    return c;
  }

  friend bool operator==(const Bitset&, const Bitset&) = default;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        f((wi << 6) + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

 private:
  std::size_t find_from_word(std::size_t wi) const {
    for (; wi < words_.size(); ++wi)
      if (words_[wi]) return (wi << 6) + static_cast<std::size_t>(std::countr_zero(words_[wi]));
    return npos;
  }
  void trim() {
    if (bits_ & 63) words_.back() &= (std::uint64_t{1} << (bits_ & 63)) - 1;
  }

  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Square boolean matrix as bit-packed rows.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n) : rows_(n, Bitset(n)) {}

  std::size_t size() const { return rows_.size(); }
  const Bitset& row(std::size_t i) const { return rows_[i]; }
  Bitset& row(std::size_t i) { return rows_[i]; }
  bool test(std::size_t i, std::size_t j) const { return rows_[i].test(j); }
  void set(std::size_t i, std::size_t j) { rows_[i].set(j); }

  bool all_positive() const {
    for (const auto& r : rows_)
      if (!r.all()) return false;
    return true;
  }

  /// Boolean product: (this * o)[i] = OR over k in row i of o.row(k).
  BitMatrix operator*(const BitMatrix& o) const {
    BitMatrix out(size());
    for (std::size_t i = 0; i < size(); ++i) {
      Bitset& dst = out.rows_[i];
      rows_[i].for_each([&](std::size_t k) { dst |= o.rows_[k]; });
    }
    return out;
  }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::vector<Bitset> rows_;
};

}  // namespace ovshift
