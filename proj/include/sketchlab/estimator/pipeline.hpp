#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "sketchlab/core/bitvector.hpp"
#include "sketchlab/core/database.hpp"
#include "sketchlab/estimator/bruteforce.hpp"
#include "sketchlab/estimator/hadamard.hpp"
#include "sketchlab/indicator/ecc.hpp"
#include "sketchlab/shatter/shatter.hpp"
#include "sketchlab/sketch/builders.hpp"

namespace sketchlab {

/// Answers k-itemset frequency queries with an estimate.
using EstimatorOracle = std::function<double(const Itemset&)>;

EstimatorOracle exact_estimator_oracle(const Database& db);
EstimatorOracle sketch_estimator_oracle(SketchBlob blob);

/// v×n sub-databases stacked under the shattered vectors: row i·n + j is
/// (x_i, D_i(j)) over 2d columns.
struct EstimatorInstance {
  ShatteredFamily family;
  std::vector<BitVector> payloads;
  std::vector<Database> blocks;
  Database db{1, 1};
};

/// The estimator encoding attack with base itemset size c, d = c·d0 and
/// v = (k−c)·log2(d/(k−c)). Each block D_i is D2 of c−1 random d0×n factors
/// with an identity inner code, so it carries b = d0·n payload bits; an
/// outer LinearCodec spans all v·b bits.
class EstimatorAttack {
 public:
  struct Decoded {
    BitVector payload;  // v·b bits before outer decoding
    std::optional<BitVector> message;
    /// Per block: μ-weighted mean |ẑ − z| against the decoded block.
    std::vector<double> block_error;
    std::size_t blocks_passing = 0;
  };

  /// Factors are redrawn (up to 64 times) until y ↦ Ay is injective; when
  /// d0^(c−1) < n that is impossible and the last draw is kept.
  EstimatorAttack(std::size_t d0, std::size_t n, std::size_t c, std::size_t k,
                  std::uint64_t factor_seed, std::shared_ptr<const Codec> outer = nullptr);

  std::size_t d0() const { return d0_; }
  std::size_t n() const { return n_; }
  std::size_t c() const { return c_; }
  std::size_t k() const { return k_; }
  std::size_t d() const { return c_ * d0_; }
  std::size_t v() const { return family_.v; }
  std::size_t block_bits() const { return d0_ * n_; }
  std::size_t message_bits() const { return outer_->message_bits(); }
  bool injective() const { return injective_; }
  const HadamardStack& stack() const { return stack_; }
  const ShatteredFamily& family() const { return family_; }
  const Codec& outer() const { return *outer_; }

  EstimatorInstance encode(const BitVector& message) const;
  EstimatorInstance encode_payload(const BitVector& payload) const;
  /// Sub-database carrying one block's b payload bits.
  Database block_database(const BitVector& block_payload) const;
  /// T'(T, s) = T_s ∪ {d + j : j ∈ T}.
  Itemset lifted_query(const Itemset& t, std::uint64_t s_mask) const;
  Decoded decode(const EstimatorOracle& oracle, double epsilon, const DecoderConfig& config) const;

 private:
  std::size_t d0_, n_, c_, k_;
  ShatteredFamily family_;
  std::vector<BitMatrix> factors_;
  HadamardStack stack_;
  bool injective_ = false;
  std::shared_ptr<const Codec> outer_;
};

struct EstimatorOutcome {
  std::optional<BitVector> message;
  /// Blocks whose payload was decoded exactly.
  std::size_t blocks_recovered = 0;
  std::size_t blocks_passing = 0;
  std::uint64_t sketch_bits = 0;
};

/// message (≤ message_bits, zero-padded) → database → sketch with the
/// given semantics at precision ε → decode.
EstimatorOutcome run_estimator_attack(const EstimatorAttack& attack, const BitVector& message,
                                 double epsilon, double delta, const SketchBuilder& builder,
                                 std::uint64_t seed, const DecoderConfig& config,
                                 Semantics semantics = Semantics::ForAllEstimator);

}  // namespace sketchlab
