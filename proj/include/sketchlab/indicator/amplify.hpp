#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sketchlab/core/database.hpp"
#include "sketchlab/indicator/inner_product.hpp"
#include "sketchlab/indicator/oracle.hpp"
#include "sketchlab/sketch/builders.hpp"

namespace sketchlab {

/// m blocks of v×2d rows stacked, each row followed by the d-bit indicator
/// of its block's tag T_i, a ((k−1)/2)-subset of [d].
struct AmplifiedInstance {
  std::size_t d = 0;
  std::size_t k = 0;
  std::uint64_t m = 0;
  std::vector<Itemset> tags;
  std::vector<Database> blocks;
  Database db{1, 1};
};

/// 1/(50·epsilon), required to be an integer.
std::uint64_t amplification_blocks(double epsilon);

/// k odd ≥ 3; m = 1/(50ε) = blocks.size() ≤ C(d, (k−1)/2); every block has
/// the same row count and 2d columns. Tags are the first m colex subsets.
AmplifiedInstance amplify_encode(const std::vector<Database>& blocks, std::size_t d,
                                 std::size_t k, double epsilon);

/// T*_i = T* ∪ {2d + j : j ∈ T_i}. |T*| must be (k+1)/2 over 2d columns.
Itemset lift_query(const AmplifiedInstance& instance, std::size_t block, const Itemset& tstar);

/// Oracle over block `block` at threshold 1/50, answering through an oracle
/// for the whole amplified database.
IndicatorOracle amplified_oracle(const AmplifiedInstance& instance, IndicatorOracle outer,
                                 std::size_t block);

struct AmplifiedOutcome {
  std::vector<std::optional<BitVector>> messages;
  double recovered_frac = 0.0;
  std::uint64_t sketch_bits = 0;
};

/// Encodes one message per block with InnerProductAttack(d, (k+1)/2),
/// amplifies, sketches the result once at `epsilon` and decodes every block.
AmplifiedOutcome attack_amplified(const std::vector<BitVector>& messages, std::size_t d,
                                  std::size_t k, double epsilon, double delta,
                                  const SketchBuilder& builder, std::uint64_t seed);

}  // namespace sketchlab
