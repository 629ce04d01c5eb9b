#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace tfimqec {

/// Dense bit vector over GF(2), packed 64 bits per word.
class BitRow {
 public:
  BitRow() = default;
  explicit BitRow(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::size_t size() const noexcept { return bits_; }
  bool get(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v = true) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    words_[i >> 6] = v ? (words_[i >> 6] | bit) : (words_[i >> 6] & ~bit);
  }
  void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  BitRow& operator^=(const BitRow& other) noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      words_[w] ^= other.words_[w];
    }
    return *this;
  }

  bool any() const noexcept {
    for (std::uint64_t w : words_) {
      if (w) return true;
    }
    return false;
  }

  /// Lowest set bit, or std::nullopt.
  std::optional<std::size_t> first_set() const noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w]) {
        return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
      }
    }
    return std::nullopt;
  }

  std::vector<std::size_t> set_bits() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      for (std::uint64_t bits = words_[w]; bits; bits &= bits - 1) {
        out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
      }
    }
    return out;
  }

  friend bool operator==(const BitRow&, const BitRow&) = default;

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Incremental row-span membership over GF(2).
///
/// Rows are reduced against the current pivots as they are added; each stored
/// row remembers which input rows it is the sum of, so membership queries
/// return an explicit combination.
class Gf2Span {
 public:
  Gf2Span(std::size_t width, std::size_t max_rows) : width_(width), max_rows_(max_rows) {}

  /// Adds input row `index` (0-based, < max_rows). Returns true if it was
  /// independent of the rows added so far.
  bool add(const BitRow& row, std::size_t index);

  /// Input-row combination summing to `row`, or std::nullopt if `row` is not
  /// in the span.
  std::optional<BitRow> solve(const BitRow& row) const;

  std::size_t rank() const noexcept { return pivots_.size(); }

 private:
  struct Pivot {
    std::size_t column;
    BitRow row;
    BitRow combination;
  };
  void reduce(BitRow& row, BitRow& combination) const;

  std::size_t width_;
  std::size_t max_rows_;
  std::vector<Pivot> pivots_;
};

}  // namespace tfimqec
