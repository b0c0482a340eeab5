#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "sketchlab/core/bitvector.hpp"
#include "sketchlab/core/database.hpp"
#include "sketchlab/indicator/ecc.hpp"
#include "sketchlab/indicator/oracle.hpp"
#include "sketchlab/shatter/shatter.hpp"
#include "sketchlab/sketch/builders.hpp"

namespace sketchlab {

/// v×2d database whose row i is (x_i, y_i).
struct InnerProductInstance {
  ShatteredFamily family;
  std::vector<BitVector> payload;
  Database db{1, 1};
};

InnerProductInstance encode_inner_product(const std::vector<BitVector>& payload,
                                          const ShatteredFamily& family);

/// T_{s,j} = T_s ∪ {d + j} over 2d columns; f_{T_{s,j}} = ⟨s, column j of
/// the y-half⟩ / v.
Itemset inner_product_query(const ShatteredFamily& family, std::uint64_t s_mask, std::size_t j);

/// Some t' ∈ {0,1}^v (bit i = t'_{i+1}) such that for every s:
/// b[s] = 1 ⇒ ⟨s,t'⟩ > εv and b[s] = 0 ⇒ ⟨s,t'⟩ < εv/2. b is indexed by the
/// mask of s and has 2^v entries; v ≤ 20. Searches Hamming balls of growing
/// radius around the singleton-probe estimate t̂_i = b[e_i]. Throws
/// DecodeFailure if no vector is consistent.
BitVector consistency_decode(const std::vector<bool>& b, std::size_t v,
                             double epsilon = 1.0 / 50.0);

/// The ε = 1/50 encoding attack on a for-all indicator sketch over d·v
/// payload bits, v = (k−1)·log2(d/(k−1)). The codeword bit of (row i,
/// column j) is j·v + i, so each decoded column is a contiguous slice.
class InnerProductAttack {
 public:
  static constexpr double kEpsilon = 1.0 / 50.0;

  struct Decoded {
    BitVector codeword;
    std::optional<BitVector> message;
    /// Columns whose answers admitted no consistent vector; the singleton
    /// probes were used for them instead.
    std::size_t inconsistent_columns = 0;
  };

  /// codec defaults to LinearCodec(d·v); its codeword must be d·v bits.
  InnerProductAttack(std::size_t d, std::size_t k, std::shared_ptr<const Codec> codec = nullptr);

  std::size_t d() const { return family_.d; }
  std::size_t k() const { return k_; }
  std::size_t v() const { return family_.v; }
  std::size_t codeword_bits() const { return family_.d * family_.v; }
  std::size_t message_bits() const { return codec_->message_bits(); }
  const ShatteredFamily& family() const { return family_; }
  const Codec& codec() const { return *codec_; }

  InnerProductInstance encode(const BitVector& message) const;
  InnerProductInstance encode_codeword(const BitVector& codeword) const;
  /// Queries every T_{s,j}; the oracle must answer k-itemsets over 2d columns.
  Decoded decode(const IndicatorOracle& oracle) const;

 private:
  std::size_t k_;
  ShatteredFamily family_;
  std::shared_ptr<const Codec> codec_;
};

struct AttackOutcome {
  std::optional<BitVector> message;
  /// Fraction of codeword bits recovered before error correction.
  double recovered_frac = 0.0;
  std::uint64_t sketch_bits = 0;
};

/// Full pipeline: message (≤ message_bits, zero-padded) → codeword → v×2d
/// database → for-all-indicator sketch at ε = 1/50 built with `builder` →
/// decode. An empty message returns an empty message without building.
AttackOutcome run_inner_product_attack(const InnerProductAttack& attack, const BitVector& message,
                              double delta, const SketchBuilder& builder, std::uint64_t seed);

}  // namespace sketchlab
