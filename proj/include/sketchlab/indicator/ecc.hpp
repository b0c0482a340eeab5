#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sketchlab/core/bitvector.hpp"

namespace sketchlab {

/// Fixed-length binary code. decode() returns nullopt rather than a wrong
/// message whenever it can tell the corruption exceeded its guarantee.
class Codec {
 public:
  virtual ~Codec() = default;
  virtual std::size_t message_bits() const = 0;
  virtual std::size_t codeword_bits() const = 0;
  /// Bit flips decode() is guaranteed to repair.
  virtual std::size_t correctable_errors() const = 0;
  virtual BitVector encode(const BitVector& message) const = 0;
  virtual std::optional<BitVector> decode(const BitVector& codeword) const = 0;

  double rate() const {
    return static_cast<double>(message_bits()) / static_cast<double>(codeword_bits());
  }
  double correct_frac() const {
    return static_cast<double>(correctable_errors()) / static_cast<double>(codeword_bits());
  }
};

class IdentityCodec final : public Codec {
 public:
  explicit IdentityCodec(std::size_t bits) : bits_(bits) {}
  std::size_t message_bits() const override { return bits_; }
  std::size_t codeword_bits() const override { return bits_; }
  std::size_t correctable_errors() const override { return 0; }
  BitVector encode(const BitVector& message) const override;
  std::optional<BitVector> decode(const BitVector& codeword) const override;

 private:
  std::size_t bits_;
};

/// Systematic binary linear code [message | crc8 | parity] decoded through a
/// complete syndrome table of all error patterns of weight ≤ t, with
/// t = max(1, ⌈0.04·N⌉). Construction picks parity columns greedily so that
/// every such pattern has a distinct syndrome, which is exactly the
/// guarantee; the CRC-8 rejects most heavier corruptions.
///
/// Practical for N up to about 85 bits (t ≤ 4, table ≤ 2^21 entries).
class LinearCodec final : public Codec {
 public:
  explicit LinearCodec(std::size_t codeword_bits, std::uint64_t seed = 0x5EEDC0DEULL);

  std::size_t message_bits() const override { return message_bits_; }
  std::size_t codeword_bits() const override { return n_; }
  std::size_t correctable_errors() const override { return t_; }
  std::size_t parity_bits() const { return r_; }
  BitVector encode(const BitVector& message) const override;
  std::optional<BitVector> decode(const BitVector& codeword) const override;

 private:
  std::uint64_t syndrome(const BitVector& word) const;

  std::size_t n_;
  std::size_t t_;
  std::size_t r_ = 0;
  std::size_t message_bits_ = 0;
  /// Parity-check column of each systematic position (message and crc).
  std::vector<std::uint64_t> columns_;
  /// (syndrome, packed error positions), sorted by syndrome.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> table_;
};

/// CRC-8, polynomial x^8 + x^2 + x + 1, over the bits in order.
std::uint8_t crc8(const BitVector& bits);

}  // namespace sketchlab
