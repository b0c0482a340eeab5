#include "sketchlab/indicator/amplify.hpp"

#include <cmath>
#include <string>

#include "sketchlab/core/combinatorics.hpp"
#include "sketchlab/core/error.hpp"

namespace sketchlab {

std::uint64_t amplification_blocks(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0 / 50.0 * (1.0 + 1e-12))) {
    throw InvalidArgument("amplification needs 0 < epsilon <= 1/50");
  }
  const double m = 1.0 / (50.0 * epsilon);
  const double rounded = std::round(m);
  if (std::abs(m - rounded) > 1e-9 * rounded) throw InvalidArgument("1/(50*epsilon) must be an integer");
  return static_cast<std::uint64_t>(rounded);
}

AmplifiedInstance amplify_encode(const std::vector<Database>& blocks, std::size_t d,
                                 std::size_t k, double epsilon) {
  if (k < 3 || k % 2 == 0) {
    throw InvalidArgument("amplification needs odd k >= 3 (try k = " + std::to_string(k + 1) + ")");
  }
  const std::uint64_t m = amplification_blocks(epsilon);
  if (blocks.size() != m) {
    throw InvalidArgument("expected m = 1/(50*epsilon) = " + std::to_string(m) + " blocks");
  }
  const std::size_t tag_size = (k - 1) / 2;
  if (m > binomial(d, tag_size)) throw InvalidArgument("m > C(d, (k-1)/2)");
  const std::size_t rows = blocks.front().n();
  for (const Database& b : blocks) {
    if (b.n() != rows || b.d() != 2 * d) {
      throw InvalidArgument("every block must have the same row count and 2d columns");
    }
  }
  AmplifiedInstance inst;
  inst.d = d;
  inst.k = k;
  inst.m = m;
  inst.blocks = blocks;
  inst.db = Database(m * rows, 3 * d);
  for (std::uint64_t i = 0; i < m; ++i) {
    const auto tag = colex_unrank(i, tag_size);
    inst.tags.push_back(Itemset::from_indices(d, tag));
    for (std::size_t r = 0; r < rows; ++r) {
      const std::size_t out = i * rows + r;
      for (std::size_t c = 0; c < 2 * d; ++c) inst.db.set(out, c, blocks[i].get(r, c));
      for (std::size_t c : tag) inst.db.set(out, 2 * d + c, true);
    }
  }
  return inst;
}

Itemset lift_query(const AmplifiedInstance& instance, std::size_t block, const Itemset& tstar) {
  if (block >= instance.m) throw InvalidArgument("block index out of range");
  if (tstar.dim() != 2 * instance.d || tstar.cardinality() != (instance.k + 1) / 2) {
    throw InvalidArgument("block query must be a (k+1)/2-itemset over 2d columns");
  }
  BitVector members(3 * instance.d);
  for (std::size_t c : tstar.indices()) members.set(c, true);
  for (std::size_t c : instance.tags[block].indices()) members.set(2 * instance.d + c, true);
  return Itemset(std::move(members));
}

IndicatorOracle amplified_oracle(const AmplifiedInstance& instance, IndicatorOracle outer,
                                 std::size_t block) {
  if (block >= instance.m) throw InvalidArgument("block index out of range");
  // Only the shape is needed; copy it so the oracle outlives the instance.
  AmplifiedInstance shape;
  shape.d = instance.d;
  shape.k = instance.k;
  shape.m = instance.m;
  shape.tags = instance.tags;
  return [shape = std::move(shape), outer = std::move(outer), block](const Itemset& tstar) {
    return outer(lift_query(shape, block, tstar));
  };
}

AmplifiedOutcome attack_amplified(const std::vector<BitVector>& messages, std::size_t d,
                                  std::size_t k, double epsilon, double delta,
                                  const SketchBuilder& builder, std::uint64_t seed) {
  const InnerProductAttack inner(d, (k + 1) / 2);
  std::vector<Database> blocks;
  std::vector<BitVector> codewords;
  for (const BitVector& msg : messages) {
    if (msg.size() > inner.message_bits()) throw InvalidArgument("message longer than code capacity");
    BitVector padded(inner.message_bits());
    for (std::size_t i = 0; i < msg.size(); ++i) padded.set(i, msg.get(i));
    codewords.push_back(inner.codec().encode(padded));
    blocks.push_back(inner.encode_codeword(codewords.back()).db);
  }
  const AmplifiedInstance inst = amplify_encode(blocks, d, k, epsilon);
  const SketchParams params =
      SketchParams::for_database(inst.db, static_cast<std::uint32_t>(k), epsilon, delta);
  const SketchBlob blob = builder(inst.db, params, Semantics::ForAllIndicator, seed);
  const IndicatorOracle outer = sketch_oracle(blob);

  AmplifiedOutcome out;
  out.sketch_bits = blob.size_bits();
  std::size_t correct = 0;
  for (std::size_t i = 0; i < messages.size(); ++i) {
    const auto decoded = inner.decode(amplified_oracle(inst, outer, i));
    correct += codewords[i].size() - decoded.codeword.hamming_distance(codewords[i]);
    out.messages.push_back(decoded.message ? std::optional(decoded.message->slice(0, messages[i].size()))
                                           : std::nullopt);
  }
  out.recovered_frac = static_cast<double>(correct) /
                       static_cast<double>(codewords.size() * inner.codeword_bits());
  return out;
}

}  // namespace sketchlab
