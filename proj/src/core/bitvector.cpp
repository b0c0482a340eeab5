#include "sketchlab/core/bitvector.hpp"

#include <bit>

#include "sketchlab/core/error.hpp"

namespace sketchlab {

namespace {

std::uint64_t low_mask(std::size_t len) {
  return len >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << len) - 1;
}

}  // namespace

BitVector::BitVector(std::size_t size) : size_(size), words_(words_for_bits(size), 0) {}

BitVector BitVector::from_string(std::string_view bits) {
  BitVector out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      out.set(i, true);
    } else if (bits[i] != '0') {
      throw InvalidArgument("bit string may contain only '0' and '1'");
    }
  }
  return out;
}

BitVector BitVector::from_uint(std::uint64_t value, std::size_t size) {
  BitVector out(size);
  if (size > 0) out.deposit(0, size < 64 ? size : 64, value);
  return out;
}

void BitVector::set(std::size_t i, bool value) {
  const std::uint64_t bit = std::uint64_t{1} << (i & 63);
  if (value) {
    words_[i >> 6] |= bit;
  } else {
    words_[i >> 6] &= ~bit;
  }
}

std::size_t BitVector::popcount() const {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::uint64_t BitVector::extract(std::size_t offset, std::size_t len) const {
  if (len == 0) return 0;
  const std::size_t w = offset >> 6;
  const std::size_t shift = offset & 63;
  std::uint64_t value = words_[w] >> shift;
  if (shift != 0 && shift + len > 64) value |= words_[w + 1] << (64 - shift);
  return value & low_mask(len);
}

void BitVector::deposit(std::size_t offset, std::size_t len, std::uint64_t value) {
  if (len == 0) return;
  value &= low_mask(len);
  const std::size_t w = offset >> 6;
  const std::size_t shift = offset & 63;
  words_[w] = (words_[w] & ~(low_mask(len) << shift)) | (value << shift);
  if (shift != 0 && shift + len > 64) {
    const std::size_t spill = shift + len - 64;
    words_[w + 1] = (words_[w + 1] & ~low_mask(spill)) | (value >> (64 - shift));
  }
}

BitVector BitVector::slice(std::size_t offset, std::size_t len) const {
  BitVector out(len);
  for (std::size_t done = 0; done < len; done += 64) {
    const std::size_t chunk = len - done < 64 ? len - done : 64;
    out.deposit(done, chunk, extract(offset + done, chunk));
  }
  return out;
}

void BitVector::append(const BitVector& other) {
  const std::size_t base = size_;
  size_ += other.size_;
  words_.resize(words_for_bits(size_), 0);
  for (std::size_t done = 0; done < other.size_; done += 64) {
    const std::size_t chunk = other.size_ - done < 64 ? other.size_ - done : 64;
    deposit(base + done, chunk, other.extract(done, chunk));
  }
}

void BitVector::push_back(bool bit) {
  ++size_;
  if (words_.size() < words_for_bits(size_)) words_.push_back(0);
  set(size_ - 1, bit);
}

std::size_t BitVector::hamming_distance(const BitVector& other) const {
  if (other.size_ != size_) throw InvalidArgument("hamming distance of unequal lengths");
  std::size_t total = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    total += static_cast<std::size_t>(std::popcount(words_[w] ^ other.words_[w]));
  }
  return total;
}

std::string BitVector::to_string() const {
  std::string out(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) out[i] = '1';
  }
  return out;
}

}  // namespace sketchlab
