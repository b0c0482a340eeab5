#include "sketchlab/indicator/inner_product.hpp"

#include <bit>
#include <string>

#include "sketchlab/core/combinatorics.hpp"
#include "sketchlab/core/error.hpp"
#include "sketchlab/core/parallel.hpp"

namespace sketchlab {

namespace {

constexpr std::size_t kMaxV = 20;

bool consistent(const std::vector<bool>& b, std::uint64_t t, const std::vector<bool>& ok_one,
                const std::vector<bool>& ok_zero) {
  for (std::uint64_t s = 0; s < b.size(); ++s) {
    const auto pc = static_cast<std::size_t>(std::popcount(s & t));
    if (b[s] ? !ok_one[pc] : !ok_zero[pc]) return false;
  }
  return true;
}

}  // namespace

InnerProductInstance encode_inner_product(const std::vector<BitVector>& payload,
                                          const ShatteredFamily& family) {
  if (payload.size() != family.v) {
    throw InvalidArgument("payload must have v = " + std::to_string(family.v) + " vectors");
  }
  InnerProductInstance inst{family, payload, Database(family.v, 2 * family.d)};
  for (std::size_t i = 0; i < family.v; ++i) {
    if (payload[i].size() != family.d) throw InvalidArgument("payload vectors must have d bits");
    for (std::size_t j = 0; j < family.d; ++j) {
      inst.db.set(i, j, family.vectors.get(i, j));
      inst.db.set(i, family.d + j, payload[i].get(j));
    }
  }
  return inst;
}

Itemset inner_product_query(const ShatteredFamily& family, std::uint64_t s_mask, std::size_t j) {
  if (j >= family.d) throw InvalidArgument("column index j must be < d");
  const Itemset ts = itemset_for_string(family, s_mask);
  BitVector members(2 * family.d);
  for (std::size_t c : ts.indices()) members.set(c, true);
  members.set(family.d + j, true);
  return Itemset(std::move(members));
}

BitVector consistency_decode(const std::vector<bool>& b, std::size_t v, double epsilon) {
  if (v < 1 || v > kMaxV) throw InvalidArgument("consistency_decode needs 1 <= v <= 20");
  if (b.size() != (std::size_t{1} << v)) throw InvalidArgument("b must have 2^v entries");
  std::vector<bool> ok_one(v + 1), ok_zero(v + 1);
  for (std::size_t pc = 0; pc <= v; ++pc) {
    ok_one[pc] = Frequency{pc, v}.above(epsilon);
    ok_zero[pc] = Frequency{pc, v}.below(epsilon / 2.0);
  }
  std::uint64_t center = 0;
  for (std::size_t i = 0; i < v; ++i) {
    if (b[std::uint64_t{1} << i]) center |= std::uint64_t{1} << i;
  }
  for (std::size_t radius = 0; radius <= v; ++radius) {
    std::optional<std::uint64_t> found;
    for_each_k_subset(v, radius, [&](std::span<const std::size_t> flips) {
      if (found) return;
      std::uint64_t t = center;
      for (std::size_t f : flips) t ^= std::uint64_t{1} << f;
      if (consistent(b, t, ok_one, ok_zero)) found = t;
    });
    if (found) return BitVector::from_uint(*found, v);
  }
  throw DecodeFailure("consistency", "no vector satisfies every oracle answer");
}

InnerProductAttack::InnerProductAttack(std::size_t d, std::size_t k,
                                       std::shared_ptr<const Codec> codec)
    : k_(k) {
  if (k < 2) throw InvalidArgument("k >= 2");
  family_ = build_family(d, k - 1);
  if (family_.v > kMaxV) throw InvalidArgument("v = (k-1)*log2(d/(k-1)) must be <= 20");
  codec_ = codec ? std::move(codec) : std::make_shared<LinearCodec>(d * family_.v);
  if (codec_->codeword_bits() != d * family_.v) {
    throw InvalidArgument("codec codeword must have d*v = " + std::to_string(d * family_.v) +
                          " bits");
  }
}

InnerProductInstance InnerProductAttack::encode(const BitVector& message) const {
  return encode_codeword(codec_->encode(message));
}

InnerProductInstance InnerProductAttack::encode_codeword(const BitVector& codeword) const {
  if (codeword.size() != codeword_bits()) throw InvalidArgument("codeword must have d*v bits");
  std::vector<BitVector> payload(v(), BitVector(d()));
  for (std::size_t j = 0; j < d(); ++j) {
    for (std::size_t i = 0; i < v(); ++i) payload[i].set(j, codeword.get(j * v() + i));
  }
  return encode_inner_product(payload, family_);
}

InnerProductAttack::Decoded InnerProductAttack::decode(const IndicatorOracle& oracle) const {
  const std::size_t vv = v();
  std::vector<std::uint64_t> columns(d(), 0);
  std::vector<char> inconsistent(d(), 0);
  parallel_blocks(d(), [&](std::size_t, std::size_t begin, std::size_t end) {
    std::vector<bool> b(std::size_t{1} << vv);
    for (std::size_t j = begin; j < end; ++j) {
      for (std::uint64_t s = 0; s < b.size(); ++s) b[s] = oracle(inner_product_query(family_, s, j));
      try {
        columns[j] = consistency_decode(b, vv, kEpsilon).extract(0, vv);
      } catch (const DecodeFailure&) {
        inconsistent[j] = 1;
        for (std::size_t i = 0; i < vv; ++i) {
          if (b[std::uint64_t{1} << i]) columns[j] |= std::uint64_t{1} << i;
        }
      }
    }
  });
  Decoded out;
  out.codeword = BitVector(codeword_bits());
  for (std::size_t j = 0; j < d(); ++j) {
    out.codeword.deposit(j * vv, vv, columns[j]);
    out.inconsistent_columns += static_cast<std::size_t>(inconsistent[j]);
  }
  out.message = codec_->decode(out.codeword);
  return out;
}

AttackOutcome run_inner_product_attack(const InnerProductAttack& attack, const BitVector& message,
                              double delta, const SketchBuilder& builder, std::uint64_t seed) {
  AttackOutcome out;
  if (message.empty()) {
    out.message = BitVector();
    out.recovered_frac = 1.0;
    return out;
  }
  if (message.size() > attack.message_bits()) {
    throw InvalidArgument("message longer than the code's " + std::to_string(attack.message_bits()) +
                          "-bit capacity");
  }
  BitVector padded(attack.message_bits());
  for (std::size_t i = 0; i < message.size(); ++i) padded.set(i, message.get(i));
  const BitVector codeword = attack.codec().encode(padded);
  const InnerProductInstance inst = attack.encode_codeword(codeword);
  const SketchParams params = SketchParams::for_database(
      inst.db, static_cast<std::uint32_t>(attack.k()), InnerProductAttack::kEpsilon, delta);
  const SketchBlob blob = builder(inst.db, params, Semantics::ForAllIndicator, seed);
  out.sketch_bits = blob.size_bits();
  const auto decoded = attack.decode(sketch_oracle(blob));
  out.recovered_frac = 1.0 - static_cast<double>(decoded.codeword.hamming_distance(codeword)) /
                                 static_cast<double>(codeword.size());
  if (decoded.message) out.message = decoded.message->slice(0, message.size());
  return out;
}

}  // namespace sketchlab
