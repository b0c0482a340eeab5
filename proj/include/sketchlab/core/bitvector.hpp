#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sketchlab {

/// Fixed-length bit string packed LSB-first into 64-bit words.
///
/// Bits past size() in the last word are always zero, so word-level
/// comparisons and popcounts need no masking.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size);

  /// Parses a string of '0'/'1'; character i becomes bit i.
  static BitVector from_string(std::string_view bits);
  /// The low `size` bits of `value`, bit i of value becoming bit i.
  static BitVector from_uint(std::uint64_t value, std::size_t size);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i, bool value);
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  std::size_t popcount() const;
  std::size_t word_count() const { return words_.size(); }
  std::uint64_t word(std::size_t w) const { return words_[w]; }
  std::span<const std::uint64_t> words() const { return words_; }

  /// Reads `len` ≤ 64 bits starting at `offset`; bit offset+i lands in bit i.
  std::uint64_t extract(std::size_t offset, std::size_t len) const;
  /// Writes the low `len` ≤ 64 bits of `value` starting at `offset`.
  void deposit(std::size_t offset, std::size_t len, std::uint64_t value);

  BitVector slice(std::size_t offset, std::size_t len) const;
  void append(const BitVector& other);
  void push_back(bool bit);

  std::size_t hamming_distance(const BitVector& other) const;

  std::string to_string() const;

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

inline std::size_t words_for_bits(std::size_t bits) { return (bits + 63) / 64; }

}  // namespace sketchlab
